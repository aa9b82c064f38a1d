"""Binary-image Hamming weight spectrum of a single parity check.

``compute_spectrum`` runs the trellis recursion over partial syndromes
(state y = sum of h_i x_i over the first l symbols), keeping each state's
weight polynomial truncated at degree D.  ``brute_force_spectrum`` is the
independent oracle: it enumerates every codeword.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numba
import numpy as np

from nbcheck.errors import SizeLimitError
from nbcheck.galois import FieldContext, mul_table

BRUTE_FORCE_LIMIT = 1 << 24
_U64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class CoeffSet:
    """Coefficient set {alpha^a_i} of one parity check, stored as exponents.

    Exponents are reduced mod q-1 and sorted; the set is *canonical* when it
    is also the lexicographically smallest translate (see
    ``search.canonicalize``), which in particular has a_1 = 0.
    """

    m: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        n = (1 << self.m) - 1
        exps = tuple(sorted(int(a) % n for a in self.exponents))
        if len(exps) < 2:
            raise ValueError("a parity check needs at least two coefficients")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, ctx: FieldContext, exponents: Iterable[int]) -> "CoeffSet":
        return cls(ctx.m, tuple(exponents))

    @classmethod
    def from_elements(cls, ctx: FieldContext, values: Iterable[int]) -> "CoeffSet":
        exps = []
        for v in values:
            if not 0 < v < ctx.q:
                raise ValueError(f"coefficient {v} is not a nonzero element of GF({ctx.q})")
            exps.append(ctx.exponent(v))
        return cls(ctx.m, tuple(exps))

    @property
    def dc(self) -> int:
        return len(self.exponents)

    def elements(self, ctx: FieldContext) -> list[int]:
        return [ctx.element(a) for a in self.exponents]

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)


@dataclass(frozen=True)
class Spectrum:
    """Weight-enumerator coefficients S_0..S_D of a check's binary image."""

    max_degree: int
    counts: tuple[int, ...]
    truncated: bool

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    @property
    def d_min(self) -> int | None:
        for n in range(1, len(self.counts)):
            if self.counts[n]:
                return n
        return None

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "counts": list(self.counts),
            "truncated": self.truncated,
            "d_min": self.d_min,
        }


def _check_exponents(ctx: FieldContext, H) -> tuple[int, ...]:
    exps = H.exponents if isinstance(H, CoeffSet) else tuple(int(a) for a in H)
    if isinstance(H, CoeffSet) and H.m != ctx.m:
        raise ValueError(f"coefficient set is over GF(2^{H.m}), field is GF(2^{ctx.m})")
    if len(exps) < 2:
        raise ValueError("a parity check needs at least two coefficients")
    return tuple(a % ctx.order for a in exps)


@numba.njit(cache=True)
def _trellis(products, weight, max_degree):
    # products[l, x] = h_l * x; returns (S_0..S_D of state 0, overflow flag)
    dc, q = products.shape
    cur = np.zeros((q, max_degree + 1), dtype=np.uint64)
    nxt = np.zeros((q, max_degree + 1), dtype=np.uint64)
    cur[0, 0] = 1
    light = np.array([x for x in range(q) if weight[x] <= max_degree], dtype=np.int64)
    for layer in range(dc):
        nxt[:, :] = 0
        for s in range(q):
            live = False
            for k in range(max_degree + 1):
                if cur[s, k] != 0:
                    live = True
                    break
            if not live:
                continue
            for x in light:
                d = s ^ products[layer, x]
                w = weight[x]
                for k in range(max_degree + 1 - w):
                    v = cur[s, k]
                    if v != 0:
                        t = nxt[d, k + w] + v
                        if t < v:
                            return cur[0], True
                        nxt[d, k + w] = t
        cur, nxt = nxt, cur
    return cur[0].copy(), False


def compute_spectrum(ctx: FieldContext, H, max_degree: int = 4) -> Spectrum:
    """Spectrum of the check sum h_i x_i = 0, truncated at ``max_degree``.

    Counts are unsigned 64-bit internally; an overflow raises
    ``OverflowError`` instead of wrapping.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    exps = _check_exponents(ctx, H)
    full = ctx.m * len(exps)
    D = min(max_degree, full)
    mt = mul_table(ctx)
    products = np.ascontiguousarray(mt[[ctx.element(a) for a in exps]])
    counts, overflow = _trellis(products, ctx.weight, D)
    if overflow:
        raise OverflowError("spectrum coefficient exceeds 64 bits; lower max_degree")
    out = [int(c) for c in counts] + [0] * (max_degree - D)
    return Spectrum(max_degree=max_degree, counts=tuple(out), truncated=max_degree < full)


def brute_force_spectrum(ctx: FieldContext, H) -> Spectrum:
    """Exact full spectrum by enumerating all q^(dc-1) codewords.

    x_2..x_dc range over GF(q) and x_1 is solved from the check equation.
    """
    exps = _check_exponents(ctx, H)
    dc = len(exps)
    if ctx.q ** (dc - 1) > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(
            f"brute force needs q^(dc-1) = {ctx.q ** (dc - 1)} codewords (limit {BRUTE_FORCE_LIMIT})"
        )
    n = ctx.order
    xs = np.arange(ctx.q)
    syn = np.zeros(1, dtype=np.int64)
    wsum = np.zeros(1, dtype=np.int64)
    for a in exps[1:]:
        prod = np.zeros(ctx.q, dtype=np.int64)
        prod[1:] = ctx.antilog[(ctx.log[xs[1:]] + a) % n]
        syn = (syn[:, None] ^ prod[None, :]).ravel()
        wsum = (wsum[:, None] + ctx.weight[None, :]).ravel()
    # h_1 x_1 = syn  =>  x_1 = syn * alpha^(-a_1)
    x1 = np.zeros_like(syn)
    nz = syn != 0
    x1[nz] = ctx.antilog[(ctx.log[syn[nz]] - exps[0]) % n]
    total = wsum + ctx.weight[x1]
    full = ctx.m * dc
    counts = np.bincount(total, minlength=full + 1)
    return Spectrum(max_degree=full, counts=tuple(int(c) for c in counts), truncated=False)


def pair_spectrum(ctx: FieldContext, a: int, b: int, max_degree: int) -> Spectrum:
    return compute_spectrum(ctx, (a, b), max_degree)


def spectrum_exponents(H: CoeffSet | Sequence[int]) -> tuple[int, ...]:
    return H.exponents if isinstance(H, CoeffSet) else tuple(H)


def canonical_exponents(exponents: Sequence[int], order: int) -> tuple[int, ...]:
    """Lexicographically smallest sorted translate of ``exponents`` mod ``order``."""
    exps = [int(a) % order for a in exponents]
    best = None
    for shift in set(exps):
        cand = tuple(sorted((a - shift) % order for a in exps))
        if best is None or cand < best:
            best = cand
    return best
