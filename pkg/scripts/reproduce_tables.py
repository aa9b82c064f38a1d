"""Re-derive the optimisation tables for one or more fields.

Exhaustive search where the admissible population fits the budget, the
repeated greedy search otherwise.  Writes one CSV per field.

    python3 scripts/reproduce_tables.py --q 64 128 --out results/
"""

import argparse
import csv
import time
from pathlib import Path

from nbcheck.combinatorics import xi
from nbcheck.galois import field_for_q
from nbcheck.search import DEFAULT_BUDGET, default_attempts, exhaustive, repeated_greedy
from nbcheck.weight3 import build_tables, max_dc_with_s2_zero


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--dc-max", type=int, default=20)
    ap.add_argument("--attempts", type=int, default=None)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for q in args.q:
        ctx = field_for_q(q)
        tables = build_tables(ctx)
        path = args.out / f"table_gf{q}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["q", "dc", "method", "s3", "s4", "m3", "sigma3", "delta3", "r3_percent",
                        "seconds", "exponents"])
            for dc in range(3, min(args.dc_max, max_dc_with_s2_zero(ctx.m)) + 1):
                t0 = time.perf_counter()
                if xi(ctx.m, dc) <= args.budget:
                    rep = exhaustive(ctx, tables, dc, budget=args.budget)
                else:
                    n = args.attempts or default_attempts(q)
                    rep = repeated_greedy(ctx, tables, dc, n, seed=args.seed)
                dt = time.perf_counter() - t0
                w.writerow([q, dc, rep.method, rep.s3, rep.s4, f"{rep.m3:.1f}", f"{rep.sigma3:.1f}",
                            "" if rep.delta3 is None else f"{rep.delta3:.2f}",
                            "" if rep.r3_percent is None else f"{rep.r3_percent:.1f}",
                            f"{dt:.1f}", " ".join(map(str, rep.exponents))])
                fh.flush()
                print(f"GF({q}) dc={dc} {rep.method}: S3={rep.s3} S4={rep.s4} ({dt:.1f} s)")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
