"""Symbolic view of the generator: every bit as a linear form over F2.

A linear form is an int whose bit j is the coefficient of state coordinate
j (the packing of generator.state_to_vector).  Advancing the symbolic state
costs a few dozen big-int XORs per word, so streaming tens of thousands of
steps at p = 19937 takes fractions of a second.
"""
from __future__ import annotations

from collections import deque

from .params import MT19937, GeneratorParams

__all__ = ["SymbolicState"]


class SymbolicState:
    """Window of n words, each a list of w linear forms (MSB-first)."""

    def __init__(self, params: GeneratorParams = MT19937):
        self.params = params
        w, r, n = params.w, params.r, params.n
        words: deque[list[int]] = deque()
        j = 0
        first = [0] * w
        for l in range(w - r):
            first[l] = 1 << j
            j += 1
        words.append(first)
        for _ in range(1, n):
            word = [1 << (j + l) for l in range(w)]
            j += w
            words.append(word)
        self.words = words
        # per-bit view of the twist vector, MSB first
        self._a_bits = [(params.a >> (w - 1 - l)) & 1 for l in range(w)]

    def step_word(self) -> list[int]:
        """Advance one step; return the new word's w linear forms."""
        p = self.params
        w, r, m = p.w, p.r, p.m
        words = self.words
        w0, w1, wm = words[0], words[1], words[m]
        # y = upper part of word 0, lower part of word 1
        y = w0[: w - r] + w1[w - r:]
        lsb = y[w - 1]
        a_bits = self._a_bits
        new = [wm[0] ^ (lsb if a_bits[0] else 0)]
        for l in range(1, w):
            f = wm[l] ^ y[l - 1]
            if a_bits[l]:
                f ^= lsb
            new.append(f)
        words.popleft()
        words.append(new)
        return new

    def temper_forms(self, word: list[int]) -> list[int]:
        """Linear forms of the tempered output bits for one word's forms."""
        p = self.params
        w = p.w

        def bit(mask: int, l: int) -> int:
            return (mask >> (w - 1 - l)) & 1

        y = [word[l] ^ (word[l - p.u] if l >= p.u and bit(p.d, l) else 0)
             for l in range(w)]
        y = [y[l] ^ (y[l + p.s] if l + p.s < w and bit(p.b, l) else 0)
             for l in range(w)]
        y = [y[l] ^ (y[l + p.t] if l + p.t < w and bit(p.c, l) else 0)
             for l in range(w)]
        y = [y[l] ^ (y[l - p.l] if l >= p.l else 0) for l in range(w)]
        return y

    def output_forms(self) -> list[int]:
        """Advance one step and temper: forms of the next output word."""
        return self.temper_forms(self.step_word())
