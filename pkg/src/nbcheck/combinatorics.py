"""Counting admissible coefficient sets.

gamma(m, p, n) is the number of p-tuples a(1) < ... < a(p) drawn from
{0, ..., n-1} with consecutive gaps of at least m.  It obeys the
Pascal-like recursion

    gamma(m, p, n) = gamma(m, p, n-1) + gamma(m, p-1, n-m)

with gamma(m, 1, n) = n.  Counts are Python ints (exact at any size).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator


@dataclass
class GammaTable:
    """Memoised gamma_m(p, n) for 0 <= p <= max_p, n <= max_n, grown on demand.

    Row p = 0 is the empty-tuple row used to close the recursion: it is 1
    for every n > -m (an empty tuple always fits) and 0 below.
    """

    m: int
    max_p: int = 0
    max_n: int = -1
    values: list[list[int]] = field(default_factory=list, repr=False)

    def ensure(self, max_p: int, max_n: int) -> None:
        if max_p <= self.max_p and max_n <= self.max_n and self.values:
            return
        P = max(max_p, self.max_p)
        N = max(max_n, self.max_n, 0)
        m = self.m
        rows = [[1] * (N + 1)]
        for p in range(1, P + 1):
            prev = rows[p - 1]
            row = [0] * (N + 1)
            for n in range(1, N + 1):
                k = n - m
                if k >= 0:
                    add = prev[k]
                else:
                    add = 1 if (p == 1 and k > -m) else 0
                row[n] = row[n - 1] + add
            rows.append(row)
        self.values = rows
        self.max_p, self.max_n = P, N

    def __call__(self, p: int, n: int) -> int:
        if p < 0:
            raise ValueError("p must be >= 0")
        if p == 0:
            return 1 if n > -self.m else 0
        if n <= 0:
            return 0
        if p > self.max_p or n > self.max_n:
            self.ensure(p, n)
        return self.values[p][n]


_TABLES: dict[int, GammaTable] = {}


def gamma_table(m: int) -> GammaTable:
    if m not in _TABLES:
        _TABLES[m] = GammaTable(m)
    return _TABLES[m]


def gamma(m: int, p: int, n: int) -> int:
    """|Gamma_m(p, n)|; n < 0 gives 0."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if m < 1:
        raise ValueError("m must be >= 1")
    return gamma_table(m)(p, n)


def gamma_closed_p2(m: int, n: int) -> int:
    if n < m - 1:
        raise ValueError("closed form requires n >= m - 1")
    return (n - m + 1) * (n - m) // 2


def xi(m: int, dc: int) -> int:
    """Number of canonical (a_1 = 0) coefficient sets of degree dc with S2 = 0."""
    if dc < 2:
        raise ValueError("dc must be >= 2")
    return gamma(m, dc - 1, (1 << m) - 2 * m)


def enumerate_gamma(m: int, p: int, n: int) -> Iterator[tuple[int, ...]]:
    """All tuples of Gamma_m(p, n) in lexicographic order (direct recursion)."""

    def rec(prefix: list[int], lo: int, left: int):
        if left == 0:
            yield tuple(prefix)
            return
        # the remaining left-1 entries need (left-1)*m room after this one
        for a in range(lo, n - (left - 1) * m):
            prefix.append(a)
            yield from rec(prefix, a + m, left - 1)
            prefix.pop()

    yield from rec([], 0, p)
