"""Uniform sampling of canonical coefficient sets with S2 = 0.

A canonical admissible set is a_1 = 0 followed by dc-1 exponents in
[m, q-1-m] with consecutive gaps >= m.  Exponents are drawn one at a time;
given the previous exponent ``prev`` and ``rem`` exponents still to place
after the current one, exponent a is chosen with weight
gamma(rem, q - 2m - a), normalised by gamma(rem + 1, q - 2m - prev).  The
product of these conditionals is 1 / xi(m, dc), i.e. the draw is uniform.

All draws use exact integer arithmetic: an integer is drawn uniformly
below the (arbitrarily large) normaliser and mapped through the
cumulative counts, so there is no floating-point bias.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from nbcheck.combinatorics import GammaTable, gamma_table
from nbcheck.errors import NoAdmissibleSetError
from nbcheck.spectrum import CoeffSet, canonical_exponents
from nbcheck.weight3 import circular_distance, max_dc_with_s2_zero

# stream tags keep greedy starts and statistics draws independent
STREAM_STARTS = 0
STREAM_STATS = 1
STREAM_ENRICH = 2


def attempt_rng(seed: int, attempt: int, stream: int = STREAM_STARTS) -> random.Random:
    """Independent generator for one attempt, derived from (seed, stream, attempt)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, attempt))
    state = ss.generate_state(4, dtype=np.uint64)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


@dataclass
class SamplerState:
    m: int
    dc: int
    seed: int = 0
    attempt: int = 0
    stream: int = STREAM_STARTS
    gamma: GammaTable = field(default=None, repr=False)

    def __post_init__(self):
        if self.dc < 2:
            raise ValueError("dc must be >= 2")
        if self.dc > max_dc_with_s2_zero(self.m):
            raise NoAdmissibleSetError(
                f"no coefficient set of degree {self.dc} over GF(2^{self.m}) has S2 = 0 "
                f"(maximum is {max_dc_with_s2_zero(self.m)})"
            )
        if self.gamma is None:
            self.gamma = gamma_table(self.m)
        self.gamma.ensure(self.dc, 1 << self.m)

    @property
    def q(self) -> int:
        return 1 << self.m

    def with_attempt(self, attempt: int, stream: int | None = None) -> "SamplerState":
        return SamplerState(
            self.m, self.dc, self.seed, attempt,
            self.stream if stream is None else stream, self.gamma,
        )

    def rng(self) -> random.Random:
        return attempt_rng(self.seed, self.attempt, self.stream)


def transition_probabilities(state: SamplerState, prev: int, rem: int) -> dict[int, Fraction]:
    """Exact conditional law of the next exponent after ``prev``.

    ``rem`` is the number of exponents still to be placed after this one.
    """
    q, m, g = state.q, state.m, state.gamma
    total = g(rem + 1, q - 2 * m - prev)
    if total == 0:
        return {}
    return {
        a: Fraction(g(rem, q - 2 * m - a), total)
        for a in range(prev + m, q - m)
        if g(rem, q - 2 * m - a)
    }


def _draw_sorted(state: SamplerState, rng: random.Random) -> list[int]:
    q, m, dc, g = state.q, state.m, state.dc, state.gamma
    exps = [0]
    prev = 0
    for j in range(1, dc):
        rem = dc - 1 - j
        total = g(rem + 1, q - 2 * m - prev)
        r = rng.randrange(total)
        # cumulative weight of exponents prev+m..x equals
        # total - gamma(rem + 1, q - m - x - 1); pick the first x exceeding r
        target = total - r
        lo, hi = prev + m, q - 1 - m
        while lo < hi:
            mid = (lo + hi) // 2
            if g(rem + 1, q - m - mid - 1) < target:
                hi = mid
            else:
                lo = mid + 1
        exps.append(lo)
        prev = lo
    return exps


def sample_uniform(state: SamplerState, rng: random.Random | None = None) -> CoeffSet:
    """Draw one canonical-form (a_1 = 0, sorted) admissible set uniformly.

    Uses the state's own (seed, stream, attempt) generator unless ``rng``
    is supplied.
    """
    return CoeffSet(state.m, tuple(_draw_sorted(state, rng or state.rng())))


def sample_array(state: SamplerState, count: int, first_attempt: int = 0) -> np.ndarray:
    """``count`` draws, attempt indices first_attempt.., as an (count, dc) array."""
    out = np.empty((count, state.dc), dtype=np.int64)
    for k in range(count):
        rng = attempt_rng(state.seed, first_attempt + k, state.stream)
        out[k] = _draw_sorted(state, rng)
    return out


def insertion_slots(exponents, m: int) -> list[int]:
    n = (1 << m) - 1
    return [
        e for e in range(n)
        if all(circular_distance(e, a, n) >= m for a in exponents)
    ]


def enrich_from_lower_degree(lower: CoeffSet, state: SamplerState,
                             rng: random.Random | None = None) -> CoeffSet:
    """Insert one admissible exponent into an optimised degree dc-1 set.

    Raises ``NoAdmissibleSetError`` when every slot is blocked; callers fall
    back to ``sample_uniform``.
    """
    if len(lower) != state.dc - 1:
        raise ValueError(f"expected a degree-{state.dc - 1} set, got degree {len(lower)}")
    n = (1 << state.m) - 1
    exps = [int(a) % n for a in lower]
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            if circular_distance(exps[i], exps[j], n) < state.m:
                raise ValueError("lower-degree set has S2 > 0")
    slots = insertion_slots(exps, state.m)
    if not slots:
        raise NoAdmissibleSetError("no admissible insertion slot")
    rng = rng or state.rng()
    new = rng.choice(slots)
    return CoeffSet(state.m, canonical_exponents(exps + [new], n))
