"""Coefficient selection for non-binary parity checks over GF(2^m).

Coefficient sets are scored by the low-order binary weight spectrum of the
parity check's binary image: no weight-2 codewords, then as few weight-3
codewords as possible, then as few weight-4 codewords as possible.
"""

import os

import numba

# TBB in this environment is too old for numba; pick a layer that never warns
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER = "workqueue"

from nbcheck.galois import FieldContext, build_field, gf_add, gf_mul, weight_of
from nbcheck.spectrum import CoeffSet, Spectrum, brute_force_spectrum, compute_spectrum
from nbcheck.weight3 import (
    Weight3Tables,
    build_tables,
    load_tables,
    max_dc_with_s2_zero,
    s2_is_zero,
    s3_fast,
    save_tables,
)
from nbcheck.combinatorics import gamma, gamma_closed_p2, xi
from nbcheck.sampler import SamplerState, enrich_from_lower_degree, sample_uniform
from nbcheck.search import (
    SearchReport,
    canonicalize,
    estimate_stats,
    exhaustive,
    greedy_descent,
    repeated_greedy,
)

__all__ = [
    "FieldContext", "build_field", "gf_add", "gf_mul", "weight_of",
    "CoeffSet", "Spectrum", "brute_force_spectrum", "compute_spectrum",
    "Weight3Tables", "build_tables", "load_tables", "save_tables",
    "max_dc_with_s2_zero", "s2_is_zero", "s3_fast",
    "gamma", "gamma_closed_p2", "xi",
    "SamplerState", "enrich_from_lower_degree", "sample_uniform",
    "SearchReport", "canonicalize", "estimate_stats", "exhaustive",
    "greedy_descent", "repeated_greedy",
]
