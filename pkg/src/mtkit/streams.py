"""Output conversions and samplers over the raw 32-bit stream.

Conversions: raw32, concat64_low_first, concat64_high_first, res53,
reversed32.  On top of a converted block stream sit tau-skipping (drop the
tau most significant bits of each sample) and lag-set selection (emit, per
block of j_t+1 consecutive samples, the ones at offsets in I).  Composition
order is fixed: conversion, then skip, then lag.

Samples are exact dyadic rationals: RealSample keeps the integer numerator
and the bit width, so every downstream cell index is bit-reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from . import generator as gen
from .params import MT19937, GeneratorParams

__all__ = [
    "StreamConfig", "RealSample", "SampleStream",
    "concat64_low_first", "concat64_high_first", "res53", "reversed32",
    "lagged", "skip_tau", "CONVERSIONS", "CLI_CONVERSIONS",
]

CONVERSIONS = ("raw32", "concat64_low_first", "concat64_high_first",
               "res53", "reversed32")

# names used on the command line
CLI_CONVERSIONS = {
    "raw32": "raw32",
    "concat64-lo": "concat64_low_first",
    "concat64-hi": "concat64_high_first",
    "res53": "res53",
    "rev32": "reversed32",
}

_WIDTHS = {"raw32": 32, "concat64_low_first": 64, "concat64_high_first": 64,
           "res53": 53, "reversed32": 32}


@dataclass(frozen=True)
class StreamConfig:
    """How raw words become samples: conversion, lag set, tau, decimation."""

    conversion: str = "raw32"
    lag_set: tuple[int, ...] | None = None
    tau: int = 0
    decimation: int | None = None

    def __post_init__(self) -> None:
        if self.conversion not in CONVERSIONS:
            raise ValueError(f"unknown conversion {self.conversion!r}")
        if self.lag_set is not None:
            lags = tuple(self.lag_set)
            if not lags:
                raise ValueError("lag set must be nonempty when present")
            if any(b <= a for a, b in zip(lags, lags[1:])):
                raise ValueError("lag set must be strictly increasing")
            object.__setattr__(self, "lag_set", lags)
        if self.tau < 0 or self.tau >= self.width:
            raise ValueError("tau out of range for the conversion width")
        if self.decimation is not None and self.decimation < 1:
            raise ValueError("decimation stride must be >= 1")

    @property
    def width(self) -> int:
        return _WIDTHS[self.conversion]

    @property
    def sample_width(self) -> int:
        """Bits per sample after the tau skip."""
        return self.width - self.tau


@dataclass(frozen=True)
class RealSample:
    """Exact dyadic rational in [0,1): source_bits / 2**width."""

    source_bits: int
    width: int

    def __post_init__(self) -> None:
        if not 0 <= self.source_bits < (1 << self.width):
            raise ValueError("numerator out of range for the stated width")

    @property
    def divisor(self) -> int:
        return 1 << self.width

    @property
    def value(self) -> Fraction:
        return Fraction(self.source_bits, self.divisor)

    def as_float(self) -> float:
        return self.source_bits / self.divisor

    def top_bits(self, nb: int) -> int:
        if nb > self.width:
            raise ValueError("window wider than the sample")
        return self.source_bits >> (self.width - nb)

    def bit_window(self, offset: int, nb: int) -> int:
        if offset + nb > self.width:
            raise ValueError("window out of range")
        return (self.source_bits >> (self.width - offset - nb)) & ((1 << nb) - 1)


def raw32(words: Iterable[gen.OutputWord]) -> Iterator[gen.OutputWord]:
    yield from words


def concat64_low_first(words: Iterable[gen.OutputWord]) -> Iterator[gen.OutputWord]:
    """Pairs (x_{2i}, x_{2i+1}) -> 64-bit block with x_{2i+1} in the MSBs."""
    it = iter(words)
    for even in it:
        odd = next(it)
        yield gen.OutputWord((odd.bits << 32) | even.bits, 64)


def concat64_high_first(words: Iterable[gen.OutputWord]) -> Iterator[gen.OutputWord]:
    """Pairs (x_{2i}, x_{2i+1}) -> 64-bit block with x_{2i} in the MSBs."""
    it = iter(words)
    for even in it:
        odd = next(it)
        yield gen.OutputWord((even.bits << 32) | odd.bits, 64)


def res53(words: Iterable[gen.OutputWord]) -> Iterator[RealSample]:
    """The 53-bit double conversion: (a*2^26 + b) / 2^53 with a = x>>5, b = x>>6."""
    it = iter(words)
    for even in it:
        odd = next(it)
        a = even.bits >> 5
        b = odd.bits >> 6
        yield RealSample(a * 67108864 + b, 53)


def reversed32(words: Iterable[gen.OutputWord]) -> Iterator[gen.OutputWord]:
    """Each word with its 32 bits in reverse order."""
    for word in words:
        x = word.bits
        x = ((x & 0x55555555) << 1) | ((x >> 1) & 0x55555555)
        x = ((x & 0x33333333) << 2) | ((x >> 2) & 0x33333333)
        x = ((x & 0x0F0F0F0F) << 4) | ((x >> 4) & 0x0F0F0F0F)
        x = ((x & 0x00FF00FF) << 8) | ((x >> 8) & 0x00FF00FF)
        x = ((x << 16) | (x >> 16)) & 0xFFFFFFFF
        yield gen.OutputWord(x, 32)


_CONVERTERS = {
    "raw32": raw32,
    "concat64_low_first": concat64_low_first,
    "concat64_high_first": concat64_high_first,
    "res53": res53,
    "reversed32": reversed32,
}


def skip_tau(sample: RealSample, tau: int) -> RealSample:
    """Fractional part of 2**tau * u: drop the tau most significant bits."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if tau == 0:
        return sample
    if tau >= sample.width:
        raise ValueError("tau leaves no bits")
    new_w = sample.width - tau
    return RealSample(sample.source_bits & ((1 << new_w) - 1), new_w)


def lagged(samples: Iterable, lag_set: Iterable[int]) -> Iterator:
    """Per block of j_t+1 consecutive samples, emit those at offsets in I."""
    lags = tuple(lag_set)
    if not lags:
        raise ValueError("lag set must be nonempty")
    if any(b <= a for a, b in zip(lags, lags[1:])):
        raise ValueError("lag set must be strictly increasing")
    block = lags[-1] + 1
    want = set(lags)
    for i, s in enumerate(samples):
        if i % block in want:
            yield s


def _as_sample(block) -> RealSample:
    if isinstance(block, RealSample):
        return block
    return RealSample(block.bits, block.width)


class SampleStream:
    """A seeded generator plus a StreamConfig; never shared between consumers.

    samples() yields exact RealSamples after conversion -> skip -> lag.
    top_bits_chunks() is the bulk interface the statistical tests consume;
    it uses a compiled walker for the standard parameter set whenever the
    requested window stays inside one raw word, and falls back to the
    sample iterator otherwise.
    """

    def __init__(self, seed: int, config: StreamConfig,
                 params: GeneratorParams = MT19937):
        self.seed = seed
        self.config = config
        self.params = params

    def samples(self) -> Iterator[RealSample]:
        state = gen.seed(self.seed, self.params)

        def words():
            while True:
                yield gen.next_word(state)

        blocks = _CONVERTERS[self.config.conversion](words())
        samples = (_as_sample(b) for b in blocks)
        if self.config.decimation:
            step = self.config.decimation
            samples = (s for i, s in enumerate(samples) if i % step == 0)
        if self.config.tau:
            tau = self.config.tau
            samples = (skip_tau(s, tau) for s in samples)
        if self.config.lag_set:
            samples = lagged(samples, self.config.lag_set)
        return samples

    def _fast_plan(self, nb: int):
        """(stride, offsets, shift) when the window sits in one raw word."""
        cfg = self.config
        if self.params is not MT19937 or cfg.decimation:
            return None
        lags = cfg.lag_set if cfg.lag_set else (0,)
        block = lags[-1] + 1
        tau = cfg.tau
        conv = cfg.conversion
        if conv == "raw32" and tau + nb <= 32:
            return block, list(lags), 32 - tau - nb
        if conv == "concat64_low_first" and tau + nb <= 32:
            return 2 * block, [2 * j + 1 for j in lags], 32 - tau - nb
        if conv == "concat64_high_first" and tau + nb <= 32:
            return 2 * block, [2 * j for j in lags], 32 - tau - nb
        if conv == "res53" and tau + nb <= 27:
            return 2 * block, [2 * j for j in lags], 32 - tau - nb
        return None

    def top_bits_chunks(self, nb: int, total: int,
                        chunk: int = 1 << 22) -> Iterator:
        """Yield numpy uint32 arrays of the top nb post-skip bits per sample."""
        import numpy as np

        if nb > self.config.sample_width:
            raise ValueError("window wider than the post-skip sample")
        plan = self._fast_plan(nb)
        if plan is not None and nb <= 32:
            from . import _kernels
            stride, offsets, shift = plan
            walker = _kernels.LaggedWalker(self.seed, stride, offsets, shift,
                                           (1 << nb) - 1)
            done = 0
            while done < total:
                take = min(chunk, total - done)
                yield walker.values(take)
                done += take
            return
        it = self.samples()
        dtype = np.uint32 if nb <= 32 else np.uint64
        done = 0
        while done < total:
            take = min(chunk, total - done)
            buf = np.empty(take, dtype=dtype)
            for i in range(take):
                buf[i] = next(it).top_bits(nb)
            done += take
            yield buf
