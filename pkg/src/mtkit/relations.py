"""Low-weight F2-linear relations among output bits.

A relation is a set of (lag, bit) terms whose bits XOR to zero at every
step of a stream.  verify() checks a relation empirically over a range of
indices and seeds; discover() computes all relations confined to a bit
window of k successive blocks by extracting the left kernel of the
state-to-window-bits map; fold() re-addresses a relation onto a
concatenated stream.

Known relations of the standard instance (verified and rediscovered by the
test suite):

  WEIGHT5_MSB    five terms among the 12 MSBs at lags {0, 792, 1246}
  WEIGHT5_MID    five terms among bits 20..29 at the same lags
  WEIGHT6_PAIRS  six terms among bit pairs (1,16)/(2,17) at lags {0, 396, 623}
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import generator as gen
from .f2lin import F2Matrix, kernel_basis
from .params import MT19937, GeneratorParams
from .equidist import row_stream

__all__ = ["LinearRelation", "Verdict", "verify", "discover", "fold",
           "WEIGHT5_MSB", "WEIGHT5_MID", "WEIGHT6_PAIRS", "KNOWN_RELATIONS"]


@dataclass(frozen=True)
class LinearRelation:
    """Terms (lag, bit) with bit indexed MSB-first; stream names the
    conversion the relation applies to."""

    terms: frozenset[tuple[int, int]]
    stream: str = "raw32"

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a relation needs at least one term")
        object.__setattr__(self, "terms", frozenset(self.terms))
        for lag, bit in self.terms:
            if lag < 0 or bit < 0:
                raise ValueError("terms must have lag >= 0 and bit >= 0")

    @property
    def weight(self) -> int:
        return len(self.terms)

    @property
    def max_lag(self) -> int:
        return max(lag for lag, _ in self.terms)

    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self.terms)

    def to_json(self) -> list[list[int]]:
        return [[lag, bit] for lag, bit in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, stream: str = "raw32") -> "LinearRelation":
        return cls(frozenset((int(l), int(b)) for l, b in data), stream)


WEIGHT5_MSB = LinearRelation(frozenset(
    {(0, 2), (792, 4), (792, 11), (1246, 4), (1246, 11)}))
WEIGHT5_MID = LinearRelation(frozenset(
    {(0, 20), (792, 22), (792, 29), (1246, 22), (1246, 29)}))
WEIGHT6_PAIRS = LinearRelation(frozenset(
    {(0, 1), (0, 16), (396, 2), (396, 17), (623, 2), (623, 17)}))

KNOWN_RELATIONS = {"weight5-msb": WEIGHT5_MSB, "weight5-mid": WEIGHT5_MID,
                   "weight6-pairs": WEIGHT6_PAIRS}

_BLOCK_WIDTH = {"raw32": 32, "reversed32": 32,
                "concat64_low_first": 64, "concat64_high_first": 64,
                "res53": 53}


@dataclass(frozen=True)
class Verdict:
    holds: bool
    fail_index: int | None = None
    fail_seed: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def _block_values(conversion: str, seed: int, count: int,
                  params: GeneratorParams) -> np.ndarray:
    """First `count` conversion blocks as a uint64 array."""
    from . import streams

    state = gen.seed(seed, params)

    def words():
        while True:
            yield gen.next_word(state)

    if conversion == "raw32":
        it = words()
    else:
        it = streams._CONVERTERS[conversion](words())
    out = np.empty(count, dtype=np.uint64)
    for i in range(count):
        blk = next(it)
        out[i] = blk.bits if hasattr(blk, "bits") else blk.source_bits
    return out


def _fast_raw32(seed: int, count: int) -> np.ndarray:
    from ._kernels import LaggedWalker

    walker = LaggedWalker(seed, 1, [0], 0, 0xFFFFFFFF)
    return walker.values(count).astype(np.uint64)


def verify(rel: LinearRelation, stream: str = "raw32", trials: int = 10 ** 6,
           seeds=(1, 2, 3, 4, 5), params: GeneratorParams = MT19937) -> Verdict:
    """XOR the addressed bits for every start index; report the first
    counterexample if any."""
    width = _BLOCK_WIDTH[stream]
    for _, bit in rel.terms:
        if bit >= width:
            raise ValueError(f"bit {bit} out of range for {stream}")
    span = rel.max_lag + trials
    for seed_value in seeds:
        if stream == "raw32" and params is MT19937:
            vals = _fast_raw32(seed_value, span)
        else:
            vals = _block_values(stream, seed_value, span, params)
        acc = np.zeros(trials, dtype=np.uint64)
        for lag, bit in rel.sorted_terms():
            acc ^= (vals[lag: lag + trials] >> np.uint64(width - 1 - bit))
        acc &= np.uint64(1)
        bad = np.nonzero(acc)[0]
        if bad.size:
            return Verdict(False, int(bad[0]), seed_value)
    return Verdict(True)


def perturbations(rel: LinearRelation, width: int | None = None):
    """Single-term edits of a relation: drop one term, or add one absent
    term at the relation's own lags."""
    width = width or _BLOCK_WIDTH[rel.stream]
    for term in rel.sorted_terms():
        remaining = rel.terms - {term}
        if remaining:
            yield LinearRelation(remaining, rel.stream)
    lags = sorted({lag for lag, _ in rel.terms})
    for lag, bit in itertools.product(lags, range(width)):
        if (lag, bit) not in rel.terms:
            yield LinearRelation(rel.terms | {(lag, bit)}, rel.stream)


def window_map(conversion: str, k: int, bit_window: tuple[int, int],
               params: GeneratorParams = MT19937) -> F2Matrix:
    """(k*width) x p map from the state to the windowed bits of k blocks.

    Row order is step-major: row  step*width + j  is bit first+j of block
    `step`.
    """
    first, width = bit_window
    block_width = _BLOCK_WIDTH[conversion]
    if first < 0 or first + width > block_width:
        raise ValueError("window out of range")
    stream = row_stream(conversion, params)
    rows: list[int] = []
    it = stream(first + width)
    for _ in range(k):
        forms = next(it)
        rows.extend(forms[first: first + width])
    return F2Matrix.from_int_rows(rows, params.p)


def discover(conversion: str = "raw32", v: int | None = None, k: int = 0,
             bit_window: tuple[int, int] | None = None,
             max_kernel_dim: int = 20,
             params: GeneratorParams = MT19937) -> list[LinearRelation]:
    """All relations confined to the window of k successive blocks, sorted
    by ascending weight (ties: lexicographic terms).

    The window defaults to the v MSBs.  The left kernel of the window map
    is taken via kernel_basis on the transpose; every nonzero combination
    of the basis is enumerated, so the kernel dimension is capped.
    """
    if bit_window is None:
        if v is None:
            raise ValueError("need v or bit_window")
        bit_window = (0, v)
    first, width = bit_window
    if k < 1:
        raise ValueError("k must be >= 1")
    m = window_map(conversion, k, bit_window, params)
    combos = kernel_basis(m.transpose())
    dim = len(combos)
    if dim > max_kernel_dim:
        raise ValueError(
            f"kernel dimension {dim} exceeds bound {max_kernel_dim}; "
            "full enumeration is infeasible")
    relations = []
    for r in range(1, dim + 1):
        for subset in itertools.combinations(combos, r):
            vec = 0
            for b in subset:
                vec ^= b
            terms = frozenset(
                (i // width, first + i % width)
                for i in range(k * width) if (vec >> i) & 1)
            relations.append(LinearRelation(terms, conversion))
    relations.sort(key=lambda rel: (rel.weight, rel.sorted_terms()))
    return relations


def fold(rel: LinearRelation, block: int,
         conversion: str = "concat64_low_first") -> LinearRelation:
    """Re-address a raw-stream relation onto blocks of `block` words.

    lag -> lag // block; the bit moves to the position its word occupies in
    the concatenated block.
    """
    if block < 1:
        raise ValueError("block must be >= 1")
    if block == 1:
        return rel
    if block != 2:
        raise ValueError("only word pairs are supported")
    low_first = conversion == "concat64_low_first"
    terms = set()
    for lag, bit in rel.terms:
        q, par = divmod(lag, 2)
        if low_first:
            new_bit = bit if par == 1 else bit + 32
        else:
            new_bit = bit if par == 0 else bit + 32
        terms.add((q, new_bit))
    if len(terms) != len(rel.terms):
        raise ValueError("folding collapsed terms")
    return LinearRelation(frozenset(terms), conversion)
