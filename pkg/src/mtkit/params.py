"""Parameter sets for MT-family F2-linear generators.

The standard instance is MT19937 (the 2002 mt19937ar constants).  Small
instances with verified maximal period are provided for exhaustive-oracle
testing; they were found by a matrix-order search (tools/find_toy_params.py)
and are frozen here as constants.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["GeneratorParams", "MT19937", "TOY13", "TOY12", "TOY16"]


@dataclass(frozen=True)
class GeneratorParams:
    """Constants (w, N, M, r, A, tempering, seeding) of one generator.

    Bit convention everywhere: index 0 is the most significant bit of a
    w-bit word.
    """

    w: int          # word size in bits
    n: int          # state length in words
    m: int          # middle offset of the recurrence
    r: int          # split position: the r low bits of word 0 are unused
    a: int          # twist vector (w bits)
    u: int          # tempering: y ^= (y >> u) & d
    d: int
    s: int          # tempering: y ^= (y << s) & b
    b: int
    t: int          # tempering: y ^= (y << t) & c
    c: int
    l: int          # tempering: y ^= y >> l
    f: int          # seeding multiplier

    def __post_init__(self) -> None:
        if not (0 < self.m < self.n - 1):
            raise ValueError("need 0 < m < n-1")
        if not (0 <= self.r < self.w):
            raise ValueError("need 0 <= r < w")
        mask = self.word_mask
        for name in ("a", "d", "b", "c"):
            if getattr(self, name) & ~mask:
                raise ValueError(f"{name} does not fit in {self.w} bits")
        # the twist map x -> (x >> 1) ^ (x & 1) * a is invertible iff the
        # MSB of a is set
        if not (self.a >> (self.w - 1)) & 1:
            raise ValueError("twist vector must have its MSB set")

    @property
    def word_mask(self) -> int:
        return (1 << self.w) - 1

    @property
    def upper_mask(self) -> int:
        """Mask of the w-r high bits."""
        return (self.word_mask >> self.r) << self.r

    @property
    def lower_mask(self) -> int:
        """Mask of the r low bits."""
        return (1 << self.r) - 1

    @property
    def p(self) -> int:
        """State dimension in bits: n*w - r."""
        return self.n * self.w - self.r

    @property
    def period(self) -> int:
        """2**p - 1 (holds only for maximal-period parameter sets)."""
        return (1 << self.p) - 1


MT19937 = GeneratorParams(
    w=32, n=624, m=397, r=31,
    a=0x9908B0DF,
    u=11, d=0xFFFFFFFF,
    s=7, b=0x9D2C5680,
    t=15, c=0xEFC60000,
    l=18,
    f=1812433253,
)

# Small maximal-period instances (period 2**p - 1 verified by checking the
# order of the transition matrix; see tools/find_toy_params.py).  Tempering
# constants are arbitrary invertible choices.
TOY13 = GeneratorParams(
    w=4, n=4, m=2, r=3,
    a=0x9,
    u=2, d=0xF,
    s=1, b=0x6,
    t=2, c=0xC,
    l=3,
    f=181,
)

TOY12 = GeneratorParams(
    w=4, n=3, m=1, r=0,
    a=0x9,
    u=1, d=0xF,
    s=2, b=0xC,
    t=1, c=0xA,
    l=2,
    f=181,
)

TOY16 = GeneratorParams(
    w=6, n=3, m=1, r=2,
    a=0x31,
    u=2, d=0x3F,
    s=2, b=0x2C,
    t=3, c=0x38,
    l=4,
    f=181,
)
