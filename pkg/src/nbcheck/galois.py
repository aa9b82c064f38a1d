"""GF(2^m) arithmetic through dense log/antilog tables.

Elements are plain ints holding the binary vector over the basis
(1, alpha, ..., alpha^(m-1)); bit k is the coefficient of alpha^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from nbcheck.errors import ConfigurationError

# bit k = coefficient of X^k.  m = 6..10 are the polynomials the published
# coefficient tables were computed with.  Two of them differ from the ones
# usually quoted alongside those tables: for m = 9 the quoted 1 + X^5 + X^9
# does not reproduce the GF(512) results but its reciprocal 1 + X^4 + X^9
# does; for m = 10 the quoted 1 + X^4 + X^10 is (1 + X^2 + X^5)^2, and
# 1 + X^3 + X^10 reproduces the GF(1024) results.  3..5 are standard
# primitive polynomials kept only as small fixtures for brute-force checks.
PRIMITIVE_POLYS: dict[int, int] = {
    3: 0b1011,  # 1 + X + X^3
    4: 0b10011,  # 1 + X + X^4
    5: 0b100101,  # 1 + X^2 + X^5
    6: 0b1000011,  # 1 + X + X^6
    7: 0b10001001,  # 1 + X^3 + X^7
    8: 0b100011101,  # 1 + X^2 + X^3 + X^4 + X^8
    9: 0b1000010001,  # 1 + X^4 + X^9
    10: 0b10000001001,  # 1 + X^3 + X^10
}
SMALL_FIELDS = (3, 4, 5)


@dataclass(frozen=True, eq=False)
class FieldContext:
    """One GF(2^m) instance.

    ``antilog[a]`` is alpha^a for a in [0, q-2]; ``log[x]`` is its inverse
    (``log[0]`` is -1, never a valid exponent); ``weight[x]`` is popcount(x).
    """

    m: int
    primitive_poly: int
    antilog: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    weight: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Multiplicative group order q - 1 (exponents live mod this)."""
        return (1 << self.m) - 1

    def element(self, exponent: int) -> int:
        return int(self.antilog[exponent % self.order])

    def exponent(self, x: int) -> int:
        if x == 0:
            raise ValueError("zero has no discrete logarithm")
        return int(self.log[x])


_CACHE: dict[int, FieldContext] = {}


def build_field(m: int) -> FieldContext:
    """Return the (cached) field context for GF(2^m), 3 <= m <= 10."""
    if m in _CACHE:
        return _CACHE[m]
    if m not in PRIMITIVE_POLYS:
        raise ConfigurationError(f"unsupported field degree m={m}; expected 3..10")
    poly = PRIMITIVE_POLYS[m]
    q = 1 << m
    antilog = np.zeros(q - 1, dtype=np.int64)
    x = 1
    for a in range(q - 1):
        antilog[a] = x
        x <<= 1
        if x & q:
            x ^= poly
    if x != 1 or len(set(antilog.tolist())) != q - 1:
        raise ConfigurationError(f"polynomial {poly:#b} is not primitive")
    log = np.full(q, -1, dtype=np.int64)
    log[antilog] = np.arange(q - 1)
    weight = np.array([bin(v).count("1") for v in range(q)], dtype=np.int64)
    for arr in (antilog, log, weight):
        arr.setflags(write=False)
    ctx = FieldContext(m=m, primitive_poly=poly, antilog=antilog, log=log, weight=weight)
    _CACHE[m] = ctx
    return ctx


def field_for_q(q: int) -> FieldContext:
    m = q.bit_length() - 1
    if q <= 0 or (1 << m) != q:
        raise ConfigurationError(f"q={q} is not a power of two")
    return build_field(m)


def gf_add(x: int, y: int) -> int:
    return x ^ y


def gf_mul(ctx: FieldContext, x: int, y: int) -> int:
    if x == 0 or y == 0:
        return 0
    return int(ctx.antilog[(ctx.log[x] + ctx.log[y]) % ctx.order])


def weight_of(ctx: FieldContext, x: int) -> int:
    return int(ctx.weight[x])


def mul_table(ctx: FieldContext) -> np.ndarray:
    """Full q x q multiplication table (used by the spectrum engines)."""
    q = ctx.q
    lg = ctx.log
    idx = (lg[1:, None] + lg[None, 1:]) % ctx.order
    tab = np.zeros((q, q), dtype=np.int64)
    tab[1:, 1:] = ctx.antilog[idx]
    return tab
