"""Dimension of equidistribution k(v), defect d(v), and total defect Delta.

k(v) is computed by an incremental rank scan: stream the linear forms of
the v most significant bits of each output block and insert them into a
growing echelon; k(v) is the number of blocks whose v rows were all
independent before the first dependency appears.  For a maximal-period
generator this rank condition is equivalent to the counting definition,
which the toy-scale exhaustive oracle checks in the test suite.

64-bit and res53 blocks consume two raw steps each, so their k(v) is taken
over the doubled-step state map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import cache as _cache
from .f2lin import IncrementalEchelon, int_to_words
from .params import MT19937, GeneratorParams
from .symbolic import SymbolicState

__all__ = ["EquidistReport", "kv", "kv_table", "kv_res53", "row_stream"]

_STREAM_WIDTHS = {"raw32": 32, "concat64_low_first": 64,
                  "concat64_high_first": 64, "res53": 53, "reversed32": 32}


def row_stream(conversion: str, params: GeneratorParams = MT19937,
               ) -> Callable[[int], Iterator[list[int]]]:
    """Builder of per-block MSB linear-form streams for one conversion.

    The returned callable takes v and yields, per output block, the list of
    v forms (ints over the p state coordinates) of the block's v most
    significant bits.
    """
    w = params.w
    if conversion in ("raw32", "reversed32"):
        reverse = conversion == "reversed32"

        def stream(v: int) -> Iterator[list[int]]:
            if not 1 <= v <= w:
                raise ValueError(f"v must be in 1..{w}")
            sym = SymbolicState(params)
            while True:
                forms = sym.output_forms()
                if reverse:
                    yield [forms[w - 1 - l] for l in range(v)]
                else:
                    yield forms[:v]
        return stream

    if conversion in ("concat64_low_first", "concat64_high_first"):
        low_first = conversion == "concat64_low_first"

        def stream(v: int) -> Iterator[list[int]]:
            if not 1 <= v <= 2 * w:
                raise ValueError(f"v must be in 1..{2 * w}")
            sym = SymbolicState(params)
            while True:
                even = sym.output_forms()
                odd = sym.output_forms()
                msb, lsb = (odd, even) if low_first else (even, odd)
                if v <= w:
                    yield msb[:v]
                else:
                    yield msb + lsb[: v - w]
        return stream

    if conversion == "res53":
        if w != 32:
            raise ValueError("res53 requires 32-bit words")

        def stream(v: int) -> Iterator[list[int]]:
            if not 1 <= v <= 53:
                raise ValueError("v must be in 1..53")
            sym = SymbolicState(params)
            while True:
                even = sym.output_forms()
                odd = sym.output_forms()
                # 53-bit block = (even >> 5) * 2^26 + (odd >> 6)
                if v <= 27:
                    yield even[:v]
                else:
                    yield even[:27] + odd[: v - 27]
        return stream

    raise ValueError(f"unknown conversion {conversion!r}")


def kv(stream_map: Callable[[int], Iterator[list[int]]], v: int, p: int) -> int:
    """Largest k with all k*v leading-bit forms linearly independent."""
    ech = IncrementalEchelon(p, capacity=p + 70)
    nw = ech.n_words
    k = 0
    block_rows = None
    for forms in stream_map(v):
        if block_rows is None or block_rows.shape[0] != len(forms):
            block_rows = np.empty((len(forms), nw), dtype=np.uint64)
        for i, f in enumerate(forms):
            block_rows[i] = int_to_words(f, nw)
        if ech.insert_packed(block_rows) != len(forms):
            break
        k += 1
    return k


@dataclass
class EquidistReport:
    """k(v), d(v) = floor(p/v) - k(v), and Delta over v = 1..vmax."""

    label: str
    p: int
    k: dict[int, int] = field(default_factory=dict)

    @property
    def d(self) -> dict[int, int]:
        return {v: self.p // v - kv_ for v, kv_ in self.k.items()}

    @property
    def delta(self) -> int:
        return sum(self.d.values())

    def check_invariants(self) -> None:
        prev = None
        for v in sorted(self.k):
            if self.k[v] > self.p // v:
                raise AssertionError(f"k({v}) exceeds floor(p/v)")
            if prev is not None and self.k[v] > prev:
                raise AssertionError(f"k({v}) increased from k({v - 1})")
            prev = self.k[v]

    def to_dict(self) -> dict:
        return {"label": self.label, "p": self.p,
                "k": {str(v): kv_ for v, kv_ in sorted(self.k.items())},
                "delta": self.delta}


def kv_table(conversion: str, vmax: int | None = None,
             params: GeneratorParams = MT19937, use_cache: bool = True,
             progress=None) -> EquidistReport:
    """Full k(v) table for a conversion; per-v results are disk-cached."""
    width = _STREAM_WIDTHS[conversion]
    if conversion == "res53":
        width = 52
    if vmax is None:
        vmax = width
    if not 1 <= vmax <= _STREAM_WIDTHS[conversion]:
        raise ValueError("vmax out of range")
    report = EquidistReport(conversion, params.p)
    stream = row_stream(conversion, params)
    standard = params is MT19937
    for v in range(1, vmax + 1):
        key = {"conversion": conversion, "v": v}
        hit = _cache.get("kv", key) if (use_cache and standard) else None
        if hit is not None:
            report.k[v] = hit["k"]
        else:
            report.k[v] = kv(stream, v, params.p)
            if use_cache and standard:
                _cache.put("kv", key, {"k": report.k[v]})
        if progress:
            progress(v, report.k[v])
    report.check_invariants()
    return report


def kv_res53(vmax: int = 52, params: GeneratorParams = MT19937,
             use_cache: bool = True, progress=None) -> EquidistReport:
    """k(v) over the 53-bit real's significand window (default v <= 52)."""
    return kv_table("res53", vmax=vmax, params=params, use_cache=use_cache,
                    progress=progress)
