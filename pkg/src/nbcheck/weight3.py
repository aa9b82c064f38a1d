"""Fast S2/S3 evaluation through precomputed pair/triple tables.

``t2[a]`` is S3 of the check {1, alpha^a}; ``t3[a, b]`` is S3 of
{1, alpha^a, alpha^b}.  Any pair or triple of a larger check reduces to one
of these by scaling, so S3 of a degree-dc check costs C(dc, 2) + C(dc, 3)
table reads.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numba
import numpy as np

from nbcheck.errors import ConfigurationError, TableIntegrityError
from nbcheck.galois import FieldContext, build_field
from nbcheck.spectrum import CoeffSet

MAGIC = b"NBT3"
VERSION = 1
_HEADER = struct.Struct("<4sHBH3s")


@dataclass(frozen=True, eq=False)
class Weight3Tables:
    m: int
    primitive_poly: int
    t2: np.ndarray = field(repr=False)
    t3: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return (1 << self.m) - 1


def _exponents(H) -> tuple[int, ...]:
    return H.exponents if isinstance(H, CoeffSet) else tuple(int(a) for a in H)


def circular_distance(a: int, b: int, n: int) -> int:
    d = (b - a) % n
    return min(d, n - d)


def s2_is_zero(ctx: FieldContext, H) -> bool:
    """True iff the check has no binary weight-2 codeword.

    Holds exactly when every pair of exponents is at circular distance at
    least m modulo q-1 (valid for m > 2).
    """
    if ctx.m <= 2:
        raise ConfigurationError("the pairwise-distance criterion needs m > 2")
    exps = _exponents(H)
    n = ctx.order
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            if circular_distance(exps[i], exps[j], n) < ctx.m:
                return False
    return True


def max_dc_with_s2_zero(m: int) -> int:
    if m <= 2:
        raise ConfigurationError("the pairwise-distance criterion needs m > 2")
    # dc exponents with circular gaps >= m need dc * m <= q - 1 positions;
    # this equals floor(2^m / m) except when m is a power of two
    return ((1 << m) - 1) // m


def _t2(ctx: FieldContext) -> np.ndarray:
    # weight-3 codewords of x1 + alpha^a x2 = 0 split as (1, 2) or (2, 1):
    # enumerate the weight-1 symbol (alpha^c, c < m) on either side.
    n, m = ctx.order, ctx.m
    a = np.arange(n)[:, None]
    c = np.arange(m)[None, :]
    w = ctx.weight
    x1_light = w[ctx.antilog[(a + c) % n]] == 2  # x2 = alpha^c, x1 = alpha^(a+c)
    x2_light = w[ctx.antilog[(c - a) % n]] == 2  # x1 = alpha^c, x2 = alpha^(c-a)
    return (x1_light.sum(axis=1) + x2_light.sum(axis=1)).astype(np.uint32)


def _t3_all_nonzero(ctx: FieldContext) -> np.ndarray:
    """Count (1,1,1)-weight solutions of alpha^c1 + alpha^(a+c2) + alpha^(b+c3) = 0."""
    n, m = ctx.order, ctx.m
    counts = np.zeros((n, n), dtype=np.int64)
    a = np.arange(n)
    for c1 in range(m):
        for c2 in range(m):
            y = ctx.antilog[c1] ^ ctx.antilog[(a + c2) % n]
            ok = y != 0
            logy = ctx.log[y[ok]]
            rows = a[ok]
            for c3 in range(m):
                np.add.at(counts, (rows, (logy - c3) % n), 1)
    return counts


def build_tables(ctx: FieldContext) -> Weight3Tables:
    n = ctx.order
    t2 = _t2(ctx)
    t2i = t2.astype(np.int64)
    a = np.arange(n)
    pairs = t2i[:, None] + t2i[None, :] + t2i[(a[None, :] - a[:, None]) % n]
    t3 = (_t3_all_nonzero(ctx) + pairs).astype(np.uint32)
    t2.setflags(write=False)
    t3.setflags(write=False)
    return Weight3Tables(m=ctx.m, primitive_poly=ctx.primitive_poly, t2=t2, t3=t3)


def check_tables(ctx: FieldContext, tables: Weight3Tables) -> None:
    if tables.m != ctx.m or tables.primitive_poly != ctx.primitive_poly:
        raise TableIntegrityError(
            f"tables for m={tables.m}, poly={tables.primitive_poly:#x} used with "
            f"m={ctx.m}, poly={ctx.primitive_poly:#x}"
        )


class ReadCounter:
    """Counts table reads made by ``s3_fast`` when passed as ``counter``."""

    def __init__(self):
        self.reads = 0


def s3_fast(tables: Weight3Tables, H, counter: ReadCounter | None = None) -> int:
    """Number of binary weight-3 codewords of the check H.

    S3 = S3_triples - (dc - 3) * S3_pairs, where the pair and triple sums
    run over all pairs/triples of coefficients normalised by their first
    member.  For dc = 2 this is just the pair term.
    """
    if isinstance(H, CoeffSet) and H.m != tables.m:
        raise TableIntegrityError(f"tables are for m={tables.m}, set is over m={H.m}")
    exps = _exponents(H)
    dc = len(exps)
    if dc < 2:
        raise ValueError("a parity check needs at least two coefficients")
    n = tables.order
    t2, t3 = tables.t2, tables.t3
    pair_sum = 0
    triple_sum = 0
    for i in range(dc - 1):
        for j in range(i + 1, dc):
            pair_sum += int(t2[(exps[j] - exps[i]) % n])
    for i in range(dc - 2):
        for j in range(i + 1, dc - 1):
            dj = (exps[j] - exps[i]) % n
            for k in range(j + 1, dc):
                triple_sum += int(t3[dj, (exps[k] - exps[i]) % n])
    if counter is not None:
        counter.reads += dc * (dc - 1) // 2 + dc * (dc - 1) * (dc - 2) // 6
    return triple_sum - (dc - 3) * pair_sum


def s3_cost(dc: int) -> int:
    """Table reads per S3 evaluation: C(dc,2) + C(dc,3) = (dc^3 - dc) / 6."""
    return (dc**3 - dc) // 6


@numba.njit(cache=True)
def s3_batch_kernel(t2, t3, sets, n):
    out = np.empty(sets.shape[0], dtype=np.int64)
    dc = sets.shape[1]
    for r in range(sets.shape[0]):
        pair_sum = 0
        triple_sum = 0
        for i in range(dc - 1):
            ai = sets[r, i]
            for j in range(i + 1, dc):
                dj = (sets[r, j] - ai) % n
                pair_sum += t2[dj]
                for k in range(j + 1, dc):
                    triple_sum += t3[dj, (sets[r, k] - ai) % n]
        out[r] = triple_sum - (dc - 3) * pair_sum
    return out


def s3_many(tables: Weight3Tables, sets: np.ndarray) -> np.ndarray:
    """Vectorised ``s3_fast`` over the rows of an (N, dc) exponent array."""
    sets = np.ascontiguousarray(sets, dtype=np.int64)
    if sets.ndim != 2 or sets.shape[1] < 2:
        raise ValueError("expected an (N, dc) array with dc >= 2")
    return s3_batch_kernel(tables.t2.astype(np.int64), tables.t3.astype(np.int64), sets, tables.order)


# --- persistence -----------------------------------------------------------

def tables_to_bytes(tables: Weight3Tables) -> bytes:
    head = _HEADER.pack(MAGIC, VERSION, tables.m, tables.primitive_poly, b"\0\0\0")
    return (
        head
        + np.ascontiguousarray(tables.t2, dtype="<u4").tobytes()
        + np.ascontiguousarray(tables.t3, dtype="<u4").tobytes()
    )


def tables_from_bytes(blob: bytes, ctx: FieldContext | None = None) -> Weight3Tables:
    if len(blob) < _HEADER.size:
        raise TableIntegrityError("table file truncated")
    magic, version, m, poly, reserved = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise TableIntegrityError(f"bad magic {magic!r}")
    if version != VERSION:
        raise TableIntegrityError(f"unsupported table version {version}")
    if reserved != b"\0\0\0":
        raise TableIntegrityError("reserved header bytes are not zero")
    try:
        expected = build_field(m)
    except ConfigurationError as exc:
        raise TableIntegrityError(str(exc)) from exc
    if poly != expected.primitive_poly:
        raise TableIntegrityError(f"table polynomial {poly:#x} does not match field m={m}")
    if ctx is not None and (ctx.m != m or ctx.primitive_poly != poly):
        raise TableIntegrityError(f"table file is for m={m}, expected m={ctx.m}")
    n = (1 << m) - 1
    body = np.frombuffer(blob, dtype="<u4", offset=_HEADER.size)
    if body.size != n + n * n:
        raise TableIntegrityError(f"expected {n + n * n} table entries, found {body.size}")
    t2 = body[:n].astype(np.uint32)
    t3 = body[n:].reshape(n, n).astype(np.uint32)
    t2.setflags(write=False)
    t3.setflags(write=False)
    return Weight3Tables(m=m, primitive_poly=poly, t2=t2, t3=t3)


def save_tables(tables: Weight3Tables, path: str | Path) -> None:
    Path(path).write_bytes(tables_to_bytes(tables))


def load_tables(path: str | Path, ctx: FieldContext | None = None) -> Weight3Tables:
    return tables_from_bytes(Path(path).read_bytes(), ctx)


def get_tables(ctx: FieldContext, path: str | Path | None = None) -> Weight3Tables:
    """Load tables from ``path`` if it exists, else build them (and save if a path was given)."""
    if path is not None:
        p = Path(path)
        if p.exists():
            return load_tables(p, ctx)
    tables = build_tables(ctx)
    if path is not None:
        save_tables(tables, path)
    return tables
