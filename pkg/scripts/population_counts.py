"""Number of admissible coefficient sets per field and check degree, as CSV.

    python3 scripts/population_counts.py > counts.csv
"""

import csv
import math
import sys

from nbcheck.combinatorics import xi
from nbcheck.weight3 import max_dc_with_s2_zero

w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["q", "dc", "xi", "log10_xi"])
for m in range(6, 11):
    for dc in range(2, min(max_dc_with_s2_zero(m), 40) + 1):
        v = xi(m, dc)
        w.writerow([1 << m, dc, v, f"{math.log10(v):.3f}" if v else ""])
