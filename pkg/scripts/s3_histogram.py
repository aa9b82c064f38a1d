"""Histogram of S3 over uniformly drawn admissible sets, plus the greedy result.

    python3 scripts/s3_histogram.py --q 256 --dc 12 --samples 100000 --out hist_256_12.csv
"""

import argparse
import csv
from pathlib import Path

from nbcheck.galois import field_for_q
from nbcheck.search import estimate_stats, repeated_greedy
from nbcheck.weight3 import build_tables

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--q", type=int, default=256)
ap.add_argument("--dc", type=int, default=12)
ap.add_argument("--samples", type=int, default=100_000)
ap.add_argument("--attempts", type=int, default=2000)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--out", type=Path, required=True)
args = ap.parse_args()

ctx = field_for_q(args.q)
tables = build_tables(ctx)
m3, sigma3, hist = estimate_stats(ctx, tables, args.dc, args.samples, args.seed)
best = repeated_greedy(ctx, tables, args.dc, args.attempts, seed=args.seed, stats_samples=0)
with args.out.open("w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["s3", "count"])
    w.writerows(hist.items())
print(f"M3={m3:.2f} sigma3={sigma3:.2f} greedy S3={best.s3} "
      f"delta3={(m3 - best.s3) / sigma3:.2f} -> {args.out}")
