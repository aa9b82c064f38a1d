import random

import pytest

from nbcheck.galois import build_field
from nbcheck.weight3 import build_tables


@pytest.fixture(scope="session")
def fields():
    return {m: build_field(m) for m in range(3, 11)}


@pytest.fixture(scope="session")
def tables(fields):
    cache = {}

    def get(m):
        if m not in cache:
            cache[m] = build_tables(fields[m])
        return cache[m]

    return get


def random_admissible(rng: random.Random, m: int, dc: int) -> list[int]:
    """Sorted exponents with a_1 = 0 and circular gaps >= m, built from random gaps.

    Not uniform; only meant to produce varied valid inputs.
    """
    n = (1 << m) - 1
    slack = n - dc * m
    assert slack >= 0
    cuts = sorted(rng.randint(0, slack) for _ in range(dc - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [slack])]
    exps, pos = [], 0
    for extra in parts:
        exps.append(pos)
        pos += m + extra
    return exps


def chi2_upper(df: int, alpha: float = 1e-3) -> float:
    """Wilson-Hilferty approximation of the upper-alpha chi-square quantile."""
    from statistics import NormalDist

    z = NormalDist().inv_cdf(1 - alpha)
    c = 2 / (9 * df)
    return df * (1 - c + z * c ** 0.5) ** 3
