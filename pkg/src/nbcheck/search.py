"""Coefficient-set optimisers.

``exhaustive`` visits every canonical admissible set (a_1 = 0, all
circular gaps >= m) and keeps the minimum of (S3, then S4 when S3 = 0).
``repeated_greedy`` runs coordinate-wise descent from many uniform random
starts and reduces with the same total order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

import numba
import numpy as np

from nbcheck.combinatorics import xi
from nbcheck.errors import BudgetExceededError, NoAdmissibleSetError
from nbcheck.galois import FieldContext
from nbcheck.sampler import (
    STREAM_ENRICH,
    STREAM_STARTS,
    STREAM_STATS,
    SamplerState,
    attempt_rng,
    enrich_from_lower_degree,
    sample_array,
)
from nbcheck.spectrum import CoeffSet, canonical_exponents, compute_spectrum
from nbcheck.weight3 import (
    Weight3Tables,
    check_tables,
    max_dc_with_s2_zero,
    s3_batch_kernel,
    s3_many,
)

DEFAULT_BUDGET = 10**8
DEFAULT_STATS_SAMPLES = 20_000


def default_attempts(q: int) -> int:
    return 20_000 if q <= 256 else 5_000


@dataclass
class SearchReport:
    q: int
    dc: int
    method: str
    exponents: list[int]
    s3: int
    s4: int | None
    m3: float
    sigma3: float
    delta3: float | None
    r3_percent: float | None
    attempts: int
    samples_for_stats: int
    seed: int
    is_exhaustive_optimum: bool

    def to_dict(self) -> dict:
        return asdict(self)


def quality_metrics(s3: int, m3: float, sigma3: float) -> tuple[float | None, float | None]:
    """(delta3, r3_percent) of a found S3 against the random-set distribution."""
    if sigma3 > 0:
        delta = (m3 - s3) / sigma3
    else:
        delta = 0.0 if m3 == s3 else None
    r3 = 100.0 * s3 / m3 if m3 > 0 else None
    return delta, r3


def canonicalize(ctx: FieldContext, H, *, elements: bool = False) -> CoeffSet:
    """Canonical representative of H under multiplication by a constant.

    ``H`` holds exponents, or field elements when ``elements=True`` (a zero
    element is rejected).  The result is the lexicographically smallest
    sorted translate, which has a_1 = 0 and the smallest possible a_2.
    """
    if elements:
        H = CoeffSet.from_elements(ctx, H)
    exps = H.exponents if isinstance(H, CoeffSet) else tuple(H)
    return CoeffSet(ctx.m, canonical_exponents(exps, ctx.order))


def _s4(ctx: FieldContext, exps: Sequence[int]) -> int:
    return compute_spectrum(ctx, tuple(exps), 4).counts[4]


# --- exhaustive ------------------------------------------------------------

@numba.njit(cache=True)
def _s3_one(t2, t3, a, n):
    dc = a.shape[0]
    pair_sum = 0
    triple_sum = 0
    for i in range(dc - 1):
        ai = a[i]
        for j in range(i + 1, dc):
            dj = (a[j] - ai) % n
            pair_sum += t2[dj]
            for k in range(j + 1, dc):
                triple_sum += t3[dj, (a[k] - ai) % n]
    return triple_sum - (dc - 3) * pair_sum


@numba.njit(cache=True)
def _scan_first(t2, t3, n, m, dc, first, target, out, out_count):
    """Enumerate all sets with a[1] == first; returns (visits, best, best_set,
    sum, sumsq).  Sets scoring ``target`` are written to ``out`` while room remains."""
    hi = n - m
    a = np.empty(dc, dtype=np.int64)
    a[0] = 0
    a[1] = first
    for i in range(2, dc):
        a[i] = a[i - 1] + m
    best = np.int64(1) << 62
    best_set = a.copy()
    visits = 0
    total = 0.0
    total_sq = 0.0
    while True:
        s = _s3_one(t2, t3, a, n)
        visits += 1
        total += s
        total_sq += float(s) * float(s)
        if s < best:
            best = s
            best_set[:] = a
        if s == target:
            if out_count[0] < out.shape[0]:
                out[out_count[0], :] = a
            out_count[0] += 1
        i = dc - 1
        while i >= 2 and a[i] >= hi - m * (dc - 1 - i):
            i -= 1
        if i < 2:
            break
        a[i] += 1
        for j in range(i + 1, dc):
            a[j] = a[j - 1] + m
    return visits, best, best_set, total, total_sq


@numba.njit(parallel=True, cache=True)
def _exhaustive_kernel(t2, t3, n, m, dc):
    hi = n - m
    firsts = np.arange(m, hi - m * (dc - 2) + 1)
    nf = firsts.shape[0]
    visits = np.zeros(nf, dtype=np.int64)
    best = np.zeros(nf, dtype=np.int64)
    best_sets = np.zeros((nf, dc), dtype=np.int64)
    sums = np.zeros(nf)
    sumsq = np.zeros(nf)
    for f in numba.prange(nf):
        dummy = np.zeros((0, dc), dtype=np.int64)
        cnt = np.zeros(1, dtype=np.int64)
        v, b, bs, s1, s2 = _scan_first(t2, t3, n, m, dc, firsts[f], -1, dummy, cnt)
        visits[f] = v
        best[f] = b
        best_sets[f, :] = bs
        sums[f] = s1
        sumsq[f] = s2
    return visits, best, best_sets, sums, sumsq


@numba.njit(cache=True)
def _collect(t2, t3, n, m, dc, target, cap):
    hi = n - m
    out = np.zeros((cap, dc), dtype=np.int64)
    cnt = np.zeros(1, dtype=np.int64)
    for first in range(m, hi - m * (dc - 2) + 1):
        _scan_first(t2, t3, n, m, dc, first, target, out, cnt)
    return out, cnt[0]


@dataclass
class ExhaustiveResult:
    """Raw outcome of the enumeration (before report assembly)."""

    exponents: tuple[int, ...]
    s3: int
    s4: int | None
    visits: int
    mean: float
    std: float
    optima: list[tuple[int, ...]]


def exhaustive_search(ctx: FieldContext, tables: Weight3Tables, dc: int,
                      budget: int = DEFAULT_BUDGET) -> ExhaustiveResult:
    check_tables(ctx, tables)
    m, n = ctx.m, ctx.order
    if dc > max_dc_with_s2_zero(m):
        raise NoAdmissibleSetError(f"no degree-{dc} set over GF({ctx.q}) has S2 = 0")
    count = xi(m, dc)
    if count > budget:
        raise BudgetExceededError(
            f"exhaustive search over GF({ctx.q}), dc={dc} needs {count:.3e} sets "
            f"(budget {budget:.3e}); use the greedy search instead"
        )
    t2 = tables.t2.astype(np.int64)
    t3 = tables.t3.astype(np.int64)
    visits, best, best_sets, sums, sumsq = _exhaustive_kernel(t2, t3, n, m, dc)
    total_visits = int(visits.sum())
    if total_visits != count:
        raise AssertionError(f"enumeration visited {total_visits} sets, expected {count}")
    s3 = int(best.min())
    mean = float(sums.sum()) / total_visits
    var = (float(sumsq.sum()) - total_visits * mean * mean) / max(total_visits - 1, 1)
    std = math.sqrt(max(var, 0.0))
    # all sets attaining the optimum (each equivalence class shows up once per
    # member that can sit at exponent 0)
    n_opt = 0
    cap = 1024
    while True:
        found, n_opt = _collect(t2, t3, n, m, dc, s3, cap)
        if n_opt <= cap:
            break
        cap = int(n_opt)
    classes = sorted({canonical_exponents(row, n) for row in found[:n_opt].tolist()})
    if s3 == 0:
        scored = sorted((_s4(ctx, c), c) for c in classes)
        s4 = scored[0][0]
        optima = [c for v, c in scored if v == s4]
    else:
        optima = classes
        s4 = None
    return ExhaustiveResult(optima[0], s3, s4, total_visits, mean, std, optima)


def exhaustive(ctx: FieldContext, tables: Weight3Tables, dc: int,
               budget: int = DEFAULT_BUDGET, with_s4: bool = True) -> SearchReport:
    """Exact optimum over all admissible sets (minimum S3, then minimum S4).

    M3 and sigma3 are exact over the full admissible population here.
    """
    res = exhaustive_search(ctx, tables, dc, budget)
    s4 = res.s4
    if s4 is None and with_s4:
        s4 = _s4(ctx, res.exponents)
    delta, r3 = quality_metrics(res.s3, res.mean, res.std)
    return SearchReport(
        q=ctx.q, dc=dc, method="exhaustive", exponents=list(res.exponents),
        s3=res.s3, s4=s4, m3=res.mean, sigma3=res.std, delta3=delta, r3_percent=r3,
        attempts=res.visits, samples_for_stats=res.visits, seed=0,
        is_exhaustive_optimum=True,
    )


# --- greedy ----------------------------------------------------------------

@numba.njit(cache=True)
def _local_score(t2, t3, a, i, b, n, dc):
    # part of S3 that depends on a[i] when a[i] = b (the rest is constant)
    pair_sum = 0
    triple_sum = 0
    for j in range(dc):
        if j == i:
            continue
        dj = (a[j] - b) % n
        pair_sum += t2[dj]
        for k in range(j + 1, dc):
            if k == i:
                continue
            triple_sum += t3[dj, (a[k] - b) % n]
    return triple_sum - (dc - 3) * pair_sum


@numba.njit(cache=True)
def _descend(t2, t3, a, n, m, trace):
    """In-place greedy descent of one sorted, a[0] = 0 exponent vector.

    Writes S3 after each sweep into ``trace`` (while room remains) and
    returns (final S3, number of sweeps).
    """
    dc = a.shape[0]
    sweeps = 0
    improved = True
    while improved:
        improved = False
        for i in range(1, dc):
            lo = a[i - 1] + m
            hi = a[i + 1] - m if i < dc - 1 else n - m
            best = _local_score(t2, t3, a, i, a[i], n, dc)
            best_b = a[i]
            for b in range(lo, hi + 1):
                v = _local_score(t2, t3, a, i, b, n, dc)
                if v < best:
                    best = v
                    best_b = b
            if best_b != a[i]:
                a[i] = best_b
                improved = True
        if sweeps < trace.shape[0]:
            trace[sweeps] = _s3_one(t2, t3, a, n)
        sweeps += 1
    return _s3_one(t2, t3, a, n), sweeps


@numba.njit(parallel=True, cache=True)
def _descend_batch(t2, t3, starts, n, m):
    out = starts.copy()
    s3 = np.zeros(starts.shape[0], dtype=np.int64)
    for r in numba.prange(starts.shape[0]):
        trace = np.zeros(0, dtype=np.int64)
        s, _ = _descend(t2, t3, out[r], n, m, trace)
        s3[r] = s
    return out, s3


def _as_start(ctx: FieldContext, H) -> np.ndarray:
    exps = H.exponents if isinstance(H, CoeffSet) else tuple(sorted(int(a) % ctx.order for a in H))
    a = np.array(sorted(exps), dtype=np.int64)
    if a[0] != 0:
        raise ValueError("greedy descent expects a_1 = 0 (canonicalize first)")
    return a


def greedy_descent(ctx: FieldContext, tables: Weight3Tables, H0,
                   trace: list[int] | None = None) -> CoeffSet:
    """Coordinate-wise descent on exponents a_2..a_dc (a_1 stays 0).

    Each position scans its whole S2-safe window between its neighbours and
    moves to the first strictly better exponent found; sweeps repeat until
    one makes no change.  If ``trace`` is a list, S3 after each sweep is
    appended to it.
    """
    check_tables(ctx, tables)
    a = _as_start(ctx, H0)
    cap = 10_000 if trace is not None else 0
    buf = np.zeros(cap, dtype=np.int64)
    _, sweeps = _descend(tables.t2.astype(np.int64), tables.t3.astype(np.int64), a,
                         ctx.order, ctx.m, buf)
    if trace is not None:
        trace.extend(int(v) for v in buf[:min(sweeps, cap)])
    return CoeffSet(ctx.m, tuple(int(v) for v in a))


def descend_many(ctx: FieldContext, tables: Weight3Tables, starts: np.ndarray):
    return _descend_batch(tables.t2.astype(np.int64), tables.t3.astype(np.int64),
                          np.ascontiguousarray(starts, dtype=np.int64), ctx.order, ctx.m)


def greedy_starts(ctx: FieldContext, dc: int, attempts: int, seed: int,
                  enrich: CoeffSet | Sequence[int] | None = None,
                  enrich_fraction: float = 0.5) -> np.ndarray:
    """Initial sets: the first round(fraction * attempts) are insertions into
    ``enrich`` (when given), the rest uniform draws.  Attempt k always uses
    the generator for (seed, k)."""
    state = SamplerState(ctx.m, dc, seed=seed, stream=STREAM_STARTS)
    starts = sample_array(state, attempts)
    if enrich is not None:
        lower = enrich if isinstance(enrich, CoeffSet) else CoeffSet(ctx.m, tuple(enrich))
        n_enrich = int(round(enrich_fraction * attempts))
        for k in range(n_enrich):
            try:
                H = enrich_from_lower_degree(lower, state, attempt_rng(seed, k, STREAM_ENRICH))
            except NoAdmissibleSetError:
                break
            starts[k] = H.exponents
    return starts


def _best_of(ctx: FieldContext, sets: np.ndarray, scores: np.ndarray) -> tuple[tuple[int, ...], int, int | None]:
    """Reduce with the total order (s3, s4 when s3 = 0, canonical exponents)."""
    s3 = int(scores.min())
    classes = sorted({canonical_exponents(row, ctx.order) for row in sets[scores == s3].tolist()})
    if s3 == 0:
        s4, best = min((_s4(ctx, c), c) for c in classes)
        return best, s3, s4
    return classes[0], s3, None


def estimate_stats(ctx: FieldContext, tables: Weight3Tables, dc: int, samples: int,
                   seed: int = 0) -> tuple[float, float, dict[int, int]]:
    """Mean, sample standard deviation (n-1) and histogram of S3 over uniform admissible sets."""
    if samples < 2:
        raise ValueError("need at least two samples")
    check_tables(ctx, tables)
    state = SamplerState(ctx.m, dc, seed=seed, stream=STREAM_STATS)
    values = s3_many(tables, sample_array(state, samples))
    hist = dict(sorted(Counter(values.tolist()).items()))
    return float(values.mean()), float(values.std(ddof=1)), hist


def repeated_greedy(ctx: FieldContext, tables: Weight3Tables, dc: int, attempts: int,
                    seed: int = 0, enrich=None, enrich_fraction: float = 0.5,
                    stats_samples: int = DEFAULT_STATS_SAMPLES,
                    with_s4: bool = True) -> SearchReport:
    """Best of ``attempts`` greedy descents from independent uniform starts.

    The result does not depend on how attempts are scheduled: each start is
    a function of (seed, attempt index) and the reduction is a total order.
    """
    check_tables(ctx, tables)
    if dc > max_dc_with_s2_zero(ctx.m):
        raise NoAdmissibleSetError(f"no degree-{dc} set over GF({ctx.q}) has S2 = 0")
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    starts = greedy_starts(ctx, dc, attempts, seed, enrich, enrich_fraction)
    finals, scores = descend_many(ctx, tables, starts)
    best, s3, s4 = _best_of(ctx, finals, scores)
    if s4 is None and with_s4:
        s4 = _s4(ctx, best)
    if stats_samples >= 2:
        m3, sigma3, _ = estimate_stats(ctx, tables, dc, stats_samples, seed)
    else:
        m3, sigma3, stats_samples = float("nan"), float("nan"), 0
    delta, r3 = quality_metrics(s3, m3, sigma3) if stats_samples else (None, None)
    return SearchReport(
        q=ctx.q, dc=dc, method="greedy", exponents=list(best), s3=s3, s4=s4,
        m3=m3, sigma3=sigma3, delta3=delta, r3_percent=r3, attempts=attempts,
        samples_for_stats=stats_samples, seed=seed, is_exhaustive_optimum=False,
    )
