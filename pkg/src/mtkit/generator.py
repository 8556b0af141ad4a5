"""Bit-exact MT19937 core: seeding, state recurrence, tempering.

The recurrence and constants follow the 2002 mt19937ar reference program;
conformance is pinned by known-answer files in the test suite.  Everything
here is generic over GeneratorParams so the small maximal-period instances
used by the exhaustive oracles run through the same code.

Output word i is the tempered image of state word w_{n+i}.  Bit index
convention: index 0 is the MSB.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .params import MT19937, GeneratorParams

__all__ = [
    "GeneratorState", "OutputWord",
    "seed", "next_word", "temper", "untemper",
    "transition_matrix", "output_matrix",
]


@dataclass(frozen=True)
class OutputWord:
    """One tempered output word; bit(l) addresses bits MSB-first."""

    bits: int
    width: int = 32

    def bit(self, l: int) -> int:
        if not 0 <= l < self.width:
            raise IndexError(f"bit index {l} out of range for width {self.width}")
        return (self.bits >> (self.width - 1 - l)) & 1

    def __int__(self) -> int:
        return self.bits


@dataclass
class GeneratorState:
    """N words plus a cursor; index == n means a twist is pending."""

    params: GeneratorParams
    words: list[int]
    index: int

    def copy(self) -> "GeneratorState":
        return GeneratorState(self.params, list(self.words), self.index)


def seed(seed_value: int, params: GeneratorParams = MT19937) -> GeneratorState:
    """Initialize from a single word (the 2002 init_genrand recurrence)."""
    mask = params.word_mask
    words = [seed_value & mask]
    for i in range(1, params.n):
        prev = words[-1]
        words.append((params.f * (prev ^ (prev >> (params.w - 2))) + i) & mask)
    return GeneratorState(params, words, params.n)


def _twist(state: GeneratorState) -> None:
    p = state.params
    mt = state.words
    n, m = p.n, p.m
    upper, lower, a = p.upper_mask, p.lower_mask, p.a
    for k in range(n):
        y = (mt[k] & upper) | (mt[(k + 1) % n] & lower)
        mt[k] = mt[(k + m) % n] ^ (y >> 1) ^ (a if y & 1 else 0)
    state.index = 0


def temper(y: int, params: GeneratorParams = MT19937) -> int:
    y ^= (y >> params.u) & params.d
    y ^= (y << params.s) & params.b
    y ^= (y << params.t) & params.c
    y ^= y >> params.l
    return y & params.word_mask


def untemper(y: int, params: GeneratorParams = MT19937) -> int:
    """Invert temper(); each stage is unipotent so peeling bit groups works."""
    w = params.w

    def undo_right(v: int, shift: int, mask: int) -> int:
        x = 0
        for _ in range(0, w, shift):
            x = v ^ ((x >> shift) & mask)
        return x

    def undo_left(v: int, shift: int, mask: int) -> int:
        x = 0
        for _ in range(0, w, shift):
            x = v ^ ((x << shift) & mask)
        return x & params.word_mask

    y = undo_right(y, params.l, params.word_mask)
    y = undo_left(y, params.t, params.c)
    y = undo_left(y, params.s, params.b)
    y = undo_right(y, params.u, params.d)
    return y


def next_word(state: GeneratorState) -> OutputWord:
    """Advance one step and return the tempered output word."""
    if state.index >= state.params.n:
        _twist(state)
    y = state.words[state.index]
    state.index += 1
    return OutputWord(temper(y, state.params), state.params.w)


def output_words(state: GeneratorState, count: int) -> Iterator[OutputWord]:
    """Yield the next `count` output words."""
    for _ in range(count):
        yield next_word(state)


def state_to_vector(state: GeneratorState) -> int:
    """Pack the p live state bits into an int (bit j = state coordinate j).

    Coordinate order: the w-r high bits of word 0 (MSB first), then words
    1..n-1 in full, each MSB first.  The r low bits of word 0 are dropped;
    they never influence outputs.
    """
    p = state.params
    if state.index != p.n:
        # At any other index the array mixes two generation windows, and at
        # index 0 the low r bits of word 0 still feed the next output.
        raise ValueError("state vector is defined only at index == n")
    vec = 0
    j = 0
    for l in range(p.w - p.r):
        vec |= ((state.words[0] >> (p.w - 1 - l)) & 1) << j
        j += 1
    for i in range(1, p.n):
        word = state.words[i]
        for l in range(p.w):
            vec |= ((word >> (p.w - 1 - l)) & 1) << j
            j += 1
    return vec


def vector_to_state(vec: int, params: GeneratorParams = MT19937) -> GeneratorState:
    """Inverse of state_to_vector (the r dead bits of word 0 become 0)."""
    words = []
    j = 0
    w0 = 0
    for l in range(params.w - params.r):
        w0 |= ((vec >> j) & 1) << (params.w - 1 - l)
        j += 1
    words.append(w0)
    for _ in range(1, params.n):
        word = 0
        for l in range(params.w):
            word |= ((vec >> j) & 1) << (params.w - 1 - l)
            j += 1
        words.append(word)
    return GeneratorState(params, words, params.n)


def transition_matrix(params: GeneratorParams = MT19937):
    """p x p matrix B over F2: one state-advance step as a linear map."""
    from .f2lin import F2Matrix
    from .symbolic import SymbolicState

    sym = SymbolicState(params)
    word_forms = [list(w) for w in sym.words]
    new = sym.step_word()
    # after one step the state is words 1..n-1 followed by the new word
    rows: list[int] = []
    for l in range(params.w - params.r):
        rows.append(word_forms[1][l])
    for i in range(2, params.n):
        rows.extend(word_forms[i])
    rows.extend(new)
    return F2Matrix.from_int_rows(rows, params.p)


def output_matrix(params: GeneratorParams = MT19937):
    """w x p matrix O over F2: state -> bits of the next output word."""
    from .f2lin import F2Matrix
    from .symbolic import SymbolicState

    sym = SymbolicState(params)
    new = sym.step_word()
    rows = sym.temper_forms(new)
    return F2Matrix.from_int_rows(rows, params.p)
