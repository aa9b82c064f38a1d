"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 budget/size refusal.  Errors are printed to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from nbcheck.combinatorics import gamma_table, xi
from nbcheck.errors import (
    ConfigurationError,
    NBCheckError,
    NoAdmissibleSetError,
    SizeLimitError,
    TableIntegrityError,
)
from nbcheck.galois import build_field, field_for_q
from nbcheck.search import (
    DEFAULT_BUDGET,
    DEFAULT_STATS_SAMPLES,
    default_attempts,
    estimate_stats,
    exhaustive,
    repeated_greedy,
)
from nbcheck.spectrum import compute_spectrum
from nbcheck.weight3 import build_tables, get_tables, save_tables

REFERENCE_FIELDS = (64, 128, 256, 512, 1024)
SMALL_FIELDS = (8, 16, 32)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(NBCheckError):
    pass


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    m: int | None = None
    dc: int | None = None
    dc_max: int | None = None
    qs: list[int] = field(default_factory=list)
    seed: int = 0
    attempts: int | None = None
    samples: int = DEFAULT_STATS_SAMPLES
    budget: int = DEFAULT_BUDGET
    tables: Path | None = None
    out: Path | None = None
    hist_out: Path | None = None
    enrich_from: Path | None = None
    enrich_fraction: float = 0.5
    max_degree: int = 4
    coeffs: list[int] = field(default_factory=list)
    p_max: int = 5
    n_max: int = 22
    scope: str = "all"
    method: str | None = None
    allow_small_fields: bool = False
    threads: int | None = None


def _check_q(q: int, allow_small: bool) -> None:
    allowed = REFERENCE_FIELDS + (SMALL_FIELDS if allow_small else ())
    if q not in allowed:
        hint = "" if allow_small or q not in SMALL_FIELDS else " (use --allow-small-fields)"
        raise UsageError(f"q={q} not supported; expected one of {allowed}{hint}")


def _emit_json(obj, out: Path | None = None) -> None:
    text = json.dumps(obj, indent=2)
    print(text)
    if out is not None:
        Path(out).write_text(text + "\n")


def _read_exponents(path: Path) -> list[int]:
    text = Path(path).read_text().strip()
    if text.startswith("{"):
        return [int(a) for a in json.loads(text)["exponents"]]
    return [int(a) for a in text.replace(",", " ").split()]


def _cmd_gf_tables(cfg: RunConfig) -> int:
    if cfg.m is None or not 3 <= cfg.m <= 10:
        raise UsageError("--m must be in 3..10")
    ctx = build_field(cfg.m)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["exponent", "element", "weight"])
    for a in range(ctx.order):
        x = int(ctx.antilog[a])
        w.writerow([a, x, int(ctx.weight[x])])
    return EXIT_OK


def _cmd_gamma(cfg: RunConfig) -> int:
    if cfg.m is None or cfg.m < 1 or cfg.p_max < 1 or cfg.n_max < 1:
        raise UsageError("--m, --p-max and --n-max must be positive")
    g = gamma_table(cfg.m)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["p"] + list(range(1, cfg.n_max + 1)))
    for p in range(1, cfg.p_max + 1):
        w.writerow([p] + [g(p, n) for n in range(1, cfg.n_max + 1)])
    return EXIT_OK


def _cmd_count(cfg: RunConfig) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["q", "dc", "xi", "xi_sci"])
    lo = cfg.dc
    hi = cfg.dc_max if cfg.dc_max is not None else cfg.dc
    if lo is None or lo < 2 or hi < lo:
        raise UsageError("--dc must be >= 2 and --dc-max >= --dc")
    for q in cfg.qs:
        _check_q(q, cfg.allow_small_fields)
        m = q.bit_length() - 1
        for dc in range(lo, hi + 1):
            v = xi(m, dc)
            w.writerow([q, dc, v, f"{v:.3e}"])
    return EXIT_OK


def _cmd_precompute(cfg: RunConfig) -> int:
    _check_q(cfg.q, cfg.allow_small_fields)
    if cfg.out is None:
        raise UsageError("--out is required")
    ctx = field_for_q(cfg.q)
    save_tables(build_tables(ctx), cfg.out)
    _emit_json({"q": cfg.q, "m": ctx.m, "primitive_poly": ctx.primitive_poly,
                "path": str(cfg.out)})
    return EXIT_OK


def _cmd_spectrum(cfg: RunConfig) -> int:
    _check_q(cfg.q, cfg.allow_small_fields)
    if len(cfg.coeffs) < 2:
        raise UsageError("--coeffs needs at least two exponents")
    if cfg.max_degree < 1:
        raise UsageError("--max-degree must be >= 1")
    ctx = field_for_q(cfg.q)
    spec = compute_spectrum(ctx, cfg.coeffs, cfg.max_degree)
    _emit_json({"q": cfg.q, "exponents": cfg.coeffs, **spec.to_dict()}, cfg.out)
    return EXIT_OK


def _tables_for(cfg: RunConfig, ctx):
    return get_tables(ctx, cfg.tables)


def _cmd_search(cfg: RunConfig) -> int:
    _check_q(cfg.q, cfg.allow_small_fields)
    if cfg.dc is None or cfg.dc < 2:
        raise UsageError("--dc must be >= 2")
    ctx = field_for_q(cfg.q)
    tables = _tables_for(cfg, ctx)
    if cfg.method == "exhaustive":
        report = exhaustive(ctx, tables, cfg.dc, budget=cfg.budget)
    else:
        attempts = cfg.attempts if cfg.attempts is not None else default_attempts(cfg.q)
        enrich = _read_exponents(cfg.enrich_from) if cfg.enrich_from else None
        print(f"seed={cfg.seed} attempts={attempts}", file=sys.stderr)
        report = repeated_greedy(ctx, tables, cfg.dc, attempts, seed=cfg.seed, enrich=enrich,
                                 enrich_fraction=cfg.enrich_fraction,
                                 stats_samples=cfg.samples)
    _emit_json(report.to_dict(), cfg.out)
    return EXIT_OK


def _cmd_stats(cfg: RunConfig) -> int:
    _check_q(cfg.q, cfg.allow_small_fields)
    if cfg.dc is None:
        raise UsageError("--dc is required")
    if cfg.samples < 2:
        raise UsageError("--samples must be >= 2")
    ctx = field_for_q(cfg.q)
    print(f"seed={cfg.seed}", file=sys.stderr)
    m3, sigma3, hist = estimate_stats(ctx, _tables_for(cfg, ctx), cfg.dc, cfg.samples, cfg.seed)
    if cfg.hist_out is not None:
        with open(cfg.hist_out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["s3", "count"])
            for k, v in hist.items():
                w.writerow([k, v])
    _emit_json({"q": cfg.q, "dc": cfg.dc, "samples": cfg.samples, "seed": cfg.seed,
                "m3": m3, "sigma3": sigma3}, cfg.out)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    from nbcheck.golden import verify

    _check_q(cfg.q, False)
    ctx = field_for_q(cfg.q)
    report = verify(cfg.q, cfg.scope, cfg.budget, _tables_for(cfg, ctx))
    for r in report["rows"]:
        line = f"{r['status'].upper():4} q={cfg.q} dc={r['dc']} {r['check']}: expected {r['expected']} found {r['found']}"
        if r.get("note"):
            line += f"  ({r['note']})"
        print(line, file=sys.stderr)
    _emit_json(report, cfg.out)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


COMMANDS = {
    "gf-tables": _cmd_gf_tables,
    "gamma": _cmd_gamma,
    "count": _cmd_count,
    "precompute": _cmd_precompute,
    "spectrum": _cmd_spectrum,
    "search": _cmd_search,
    "stats": _cmd_stats,
    "verify": _cmd_verify,
}


def _coeff_list(text: str) -> list[int]:
    try:
        return [int(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated exponent list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--allow-small-fields", action="store_true",
                        help="accept q = 8, 16, 32 (test fields)")
    common.add_argument("--threads", type=int, default=None, help="cap on worker threads")

    p = argparse.ArgumentParser(prog="nbcheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gf-tables", parents=[common], help="dump antilog/weight tables as CSV")
    s.add_argument("--m", type=int, required=True)

    s = sub.add_parser("gamma", parents=[common], help="gamma_m(p, n) table as CSV")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--p-max", type=int, default=5)
    s.add_argument("--n-max", type=int, default=22)

    s = sub.add_parser("count", parents=[common], help="number of admissible sets xi")
    s.add_argument("--q", type=int, nargs="+", required=True, dest="qs")
    s.add_argument("--dc", type=int, required=True)
    s.add_argument("--dc-max", type=int, default=None)

    s = sub.add_parser("precompute", parents=[common], help="build and save weight-3 tables")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("spectrum", parents=[common], help="truncated weight spectrum of one check")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--coeffs", type=_coeff_list, required=True)
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--out", type=Path)

    s = sub.add_parser("search", help="optimise a coefficient set")
    ssub = s.add_subparsers(dest="method", required=True)
    e = ssub.add_parser("exhaustive", parents=[common])
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--dc", type=int, required=True)
    e.add_argument("--tables", type=Path)
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--out", type=Path)
    g = ssub.add_parser("greedy", parents=[common])
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--dc", type=int, required=True)
    g.add_argument("--attempts", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--samples", type=int, default=DEFAULT_STATS_SAMPLES,
                   help="random sets used for M3/sigma3 (0 to skip)")
    g.add_argument("--enrich-from", type=Path)
    g.add_argument("--enrich-fraction", type=float, default=0.5)
    g.add_argument("--tables", type=Path)
    g.add_argument("--out", type=Path)

    s = sub.add_parser("stats", parents=[common], help="S3 distribution over random admissible sets")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--dc", type=int, required=True)
    s.add_argument("--samples", type=int, default=DEFAULT_STATS_SAMPLES)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--hist-out", type=Path)
    s.add_argument("--tables", type=Path)
    s.add_argument("--out", type=Path)

    s = sub.add_parser("verify", parents=[common], help="recompute the published tables")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--scope", choices=["exhaustive", "greedy", "all"], default="all")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--tables", type=Path)
    s.add_argument("--out", type=Path)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    known = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in known and v is not None})


def _fail(exc: Exception, code: int) -> int:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}),
          file=sys.stderr)
    return code


def run(cfg: RunConfig) -> int:
    if cfg.threads is not None:
        import numba

        numba.set_num_threads(max(1, min(cfg.threads, numba.config.NUMBA_NUM_THREADS)))
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ConfigurationError, NoAdmissibleSetError) as exc:
        return _fail(exc, EXIT_USAGE)
    except SizeLimitError as exc:
        return _fail(exc, EXIT_REFUSED)
    except (TableIntegrityError, OSError) as exc:
        return _fail(exc, EXIT_USAGE)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
