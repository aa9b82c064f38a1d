import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbcheck.errors import SizeLimitError
from nbcheck.galois import build_field
from nbcheck.spectrum import CoeffSet, brute_force_spectrum, compute_spectrum


def test_published_gf64_spectra():
    ctx = build_field(6)
    assert compute_spectrum(ctx, (0, 9, 22, 37), 4).counts == (1, 0, 0, 20, 206)
    # S4 = 68 as published; S3 is 3, not 0 (no degree-3 GF(64) check reaches 0)
    assert compute_spectrum(ctx, (1, 16, 42), 4).counts == (1, 0, 0, 3, 68)


def test_equal_pair_has_three_weight_two_words():
    ctx = build_field(3)
    # brute force: x1 = x2, weight-1 elements give the 3 weight-2 words
    assert brute_force_spectrum(ctx, (0, 0)).counts[2] == 3
    assert compute_spectrum(ctx, (0, 0), 6).counts[2] == 3


def test_separated_pair_has_no_weight_two():
    ctx = build_field(3)
    assert brute_force_spectrum(ctx, (0, 3)).counts[:4] == (1, 0, 0, 4)


def test_full_spectrum_sums_to_codeword_count():
    ctx = build_field(3)
    for H in itertools.combinations_with_replacement(range(7), 3):
        spec = compute_spectrum(ctx, H, 9)
        assert not spec.truncated
        assert sum(spec.counts) == 64


def test_brute_force_agrees_on_gf8_all_triples():
    ctx = build_field(3)
    for H in itertools.combinations_with_replacement(range(7), 3):
        assert compute_spectrum(ctx, H, 9) == brute_force_spectrum(ctx, H)


def test_lemma1_gf16():
    assert brute_force_spectrum(build_field(4), (0, 4, 8)).counts[1] == 0


def test_brute_force_size_guard():
    with pytest.raises(SizeLimitError):
        brute_force_spectrum(build_field(8), (0, 8, 16, 24, 32))


def test_overflow_is_an_error():
    ctx = build_field(10)
    with pytest.raises(OverflowError):
        compute_spectrum(ctx, list(range(0, 200, 10)), 100)


def test_d_min():
    ctx = build_field(6)
    assert compute_spectrum(ctx, (0, 9, 22, 37), 4).d_min == 3
    assert compute_spectrum(ctx, (0, 9), 2).d_min is None


@pytest.mark.parametrize("m", [3, 4])
def test_oracle_equivalence_random(m):
    ctx = build_field(m)
    rng = random.Random(100 + m)
    for _ in range(250):
        dc = rng.choice([2, 3, 4])
        H = [rng.randrange(ctx.order) for _ in range(dc)]
        assert compute_spectrum(ctx, H, m * dc) == brute_force_spectrum(ctx, H)


@settings(max_examples=60, deadline=None)
@given(m=st.sampled_from([3, 4, 6]), data=st.data())
def test_scale_and_permutation_invariance(m, data):
    ctx = build_field(m)
    dc = data.draw(st.integers(2, 4))
    H = data.draw(st.lists(st.integers(0, ctx.order - 1), min_size=dc, max_size=dc))
    k = data.draw(st.integers(0, ctx.order - 1))
    base = compute_spectrum(ctx, H, 5)
    assert compute_spectrum(ctx, [(a + k) % ctx.order for a in H], 5) == base
    assert compute_spectrum(ctx, list(reversed(H)), 5) == base
    assert base.counts[0] == 1 and base.counts[1] == 0


@settings(max_examples=60, deadline=None)
@given(m=st.sampled_from([3, 4, 5]), data=st.data())
def test_weight2_is_sum_over_pairs(m, data):
    ctx = build_field(m)
    H = data.draw(st.lists(st.integers(0, ctx.order - 1), min_size=2, max_size=5))
    pairs = sum(compute_spectrum(ctx, (a, b), 2).counts[2]
                for a, b in itertools.combinations(H, 2))
    assert compute_spectrum(ctx, H, 2).counts[2] == pairs


def test_coeffset_from_elements_rejects_zero():
    ctx = build_field(4)
    with pytest.raises(ValueError):
        CoeffSet.from_elements(ctx, [1, 0, 3])
    assert CoeffSet.from_elements(ctx, [1, 2]).exponents == (0, 1)
