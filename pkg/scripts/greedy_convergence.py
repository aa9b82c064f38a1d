"""Best S3 as a function of the number of greedy attempts (one seed per row).

Useful to pick N_g: the curve flattens once extra starts stop paying off.

    python3 scripts/greedy_convergence.py --q 256 --dc 12 --max-attempts 20000
"""

import argparse
import csv
import sys

import numpy as np

from nbcheck.galois import field_for_q
from nbcheck.search import descend_many, greedy_starts
from nbcheck.weight3 import build_tables

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--q", type=int, default=256)
ap.add_argument("--dc", type=int, default=12)
ap.add_argument("--max-attempts", type=int, default=20_000)
ap.add_argument("--seeds", type=int, default=3)
args = ap.parse_args()

ctx = field_for_q(args.q)
tables = build_tables(ctx)
checkpoints = [n for n in (1, 10, 100, 1000, 5000, 10_000, 20_000, 50_000) if n <= args.max_attempts]
w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["seed"] + [f"ng_{n}" for n in checkpoints])
for seed in range(args.seeds):
    starts = greedy_starts(ctx, args.dc, args.max_attempts, seed)
    _, scores = descend_many(ctx, tables, starts)
    running = np.minimum.accumulate(scores)
    w.writerow([seed] + [int(running[n - 1]) for n in checkpoints])
