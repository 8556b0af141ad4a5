"""Dense bit-packed linear algebra over F2.

Rows live in numpy uint64 words, bit j of the row = bit (j & 63) of word
(j >> 6), so column 0 is the lowest bit of word 0.  Pivot rule everywhere:
lowest-index nonzero column, first row that claims it.  Elimination loops
are numba-compiled; a full-rank echelon at 19937 columns runs in seconds.
"""
from __future__ import annotations

import numpy as np
from numba import njit, uint64

__all__ = ["F2Matrix", "IncrementalEchelon", "rank", "kernel_basis",
           "incremental_echelon"]


def _n_words(cols: int) -> int:
    return (cols + 63) >> 6


def int_to_words(x: int, n_words: int) -> np.ndarray:
    """Pack a python int into little-bit-order uint64 words."""
    return np.frombuffer(x.to_bytes(n_words * 8, "little"), dtype=np.uint64).copy()


def words_to_int(words: np.ndarray) -> int:
    return int.from_bytes(words.tobytes(), "little")


@njit(cache=True)
def _ctz64(x):
    c = 0
    if x & uint64(0xFFFFFFFF) == uint64(0):
        c += 32
        x >>= uint64(32)
    if x & uint64(0xFFFF) == uint64(0):
        c += 16
        x >>= uint64(16)
    if x & uint64(0xFF) == uint64(0):
        c += 8
        x >>= uint64(8)
    if x & uint64(0xF) == uint64(0):
        c += 4
        x >>= uint64(4)
    if x & uint64(0x3) == uint64(0):
        c += 2
        x >>= uint64(2)
    if x & uint64(0x1) == uint64(0):
        c += 1
    return c


@njit(cache=True)
def _insert_rows(store, pivot_of, n_rows, rows, n_words):
    """Cascade-insert rows into the echelon store; returns (rows stored,
    rows that proved independent)."""
    count = n_rows
    independent = 0
    for ri in range(rows.shape[0]):
        for wj in range(n_words):
            store[count, wj] = rows[ri, wj]
        wi = 0
        alive = False
        while wi < n_words:
            x = store[count, wi]
            if x == uint64(0):
                wi += 1
                continue
            col = (wi << 6) + _ctz64(x)
            pr = pivot_of[col]
            if pr < 0:
                pivot_of[col] = count
                count += 1
                independent += 1
                alive = True
                break
            # eliminate; the pivot row is zero before wi, so start there
            for wj in range(wi, n_words):
                store[count, wj] ^= store[pr, wj]
        if not alive:
            # row reduced to zero: dependent, slot reused
            pass
    return count, independent


@njit(cache=True)
def _back_reduce(store, pivot_cols, pivot_of, n_words):
    """Make the echelon reduced: clear every pivot column above its row."""
    for i in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[i]
        row = pivot_of[c]
        wi = (c + 1) >> 6
        bstart = (c + 1) & 63
        while wi < n_words:
            x = store[row, wi]
            if wi == (c + 1) >> 6 and bstart:
                x &= ~uint64(0) << uint64(bstart)
            while x != uint64(0):
                b = _ctz64(x)
                col = (wi << 6) + b
                pr = pivot_of[col]
                if pr >= 0 and pr != row:
                    for wj in range(wi, n_words):
                        store[row, wj] ^= store[pr, wj]
                    x = store[row, wi]
                    if wi == (c + 1) >> 6 and bstart:
                        x &= ~uint64(0) << uint64(bstart)
                else:
                    x &= x - uint64(1)
            wi += 1
            bstart = 0


class F2Matrix:
    """Immutable-by-convention bit matrix; data is (rows, n_words) uint64."""

    def __init__(self, data: np.ndarray, rows: int, cols: int):
        if data.shape != (rows, _n_words(cols)):
            raise ValueError("storage does not match stated dimensions")
        self.data = data
        self.rows = rows
        self.cols = cols

    @classmethod
    def from_int_rows(cls, int_rows, cols: int) -> "F2Matrix":
        nw = _n_words(cols)
        data = np.zeros((len(int_rows), nw), dtype=np.uint64)
        for i, r in enumerate(int_rows):
            if r >> cols:
                raise ValueError("row has bits beyond the stated column count")
            data[i] = int_to_words(r, nw)
        return cls(data, len(int_rows), cols)

    @classmethod
    def from_bool(cls, bits: np.ndarray) -> "F2Matrix":
        rows, cols = bits.shape
        nw = _n_words(cols)
        pad = np.zeros((rows, nw * 64), dtype=np.uint8)
        pad[:, :cols] = bits.astype(np.uint8)
        packed = np.packbits(pad, axis=1, bitorder="little")
        return cls(packed.view(np.uint64), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        m = cls(np.zeros((n, _n_words(n)), dtype=np.uint64), n, n)
        for i in range(n):
            m.data[i, i >> 6] = np.uint64(1) << np.uint64(i & 63)
        return m

    @classmethod
    def random(cls, rows: int, cols: int, rng) -> "F2Matrix":
        bits = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        return cls.from_bool(bits)

    def to_bool(self) -> np.ndarray:
        raw = np.unpackbits(self.data.view(np.uint8), axis=1, bitorder="little")
        return raw[:, : self.cols].astype(bool)

    def int_rows(self) -> list[int]:
        return [words_to_int(self.data[i]) for i in range(self.rows)]

    def get(self, i: int, j: int) -> int:
        return int(self.data[i, j >> 6] >> np.uint64(j & 63)) & 1

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_bool(self.to_bool().T)

    def mat_vec(self, v: int) -> int:
        """Row-wise dot product with an int vector (bit j = coordinate j)."""
        vw = int_to_words(v, _n_words(self.cols))
        parities = np.bitwise_count(self.data & vw).sum(axis=1) & 1
        out = 0
        for i in np.nonzero(parities)[0]:
            out |= 1 << int(i)
        return out

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.data.copy(), self.rows, self.cols)


class IncrementalEchelon:
    """Growing row-echelon form; accepts rows as ints or packed arrays."""

    def __init__(self, cols: int, capacity: int = 256):
        self.cols = cols
        self.n_words = _n_words(cols)
        self._store = np.zeros((min(capacity, cols + 1), self.n_words),
                               dtype=np.uint64)
        self._pivot_of = np.full(cols, -1, dtype=np.int64)
        self._count = 0
        self.rank = 0

    def _ensure(self, extra: int) -> None:
        need = self._count + extra + 1
        if need > self._store.shape[0]:
            grown = np.zeros((max(need, 2 * self._store.shape[0]), self.n_words),
                             dtype=np.uint64)
            grown[: self._count] = self._store[: self._count]
            self._store = grown

    def insert_packed(self, rows: np.ndarray) -> int:
        """Insert packed rows; returns how many were independent."""
        if rows.ndim == 1:
            rows = rows[None, :]
        if rows.shape[1] != self.n_words:
            raise ValueError("column count mismatch")
        self._ensure(rows.shape[0])
        self._count, indep = _insert_rows(self._store, self._pivot_of,
                                          self._count, rows, self.n_words)
        self.rank += indep
        return indep

    def insert_int(self, row: int) -> bool:
        if row >> self.cols:
            raise ValueError("column count mismatch")
        return self.insert_packed(int_to_words(row, self.n_words)) == 1

    def pivot_columns(self) -> list[int]:
        return [int(c) for c in np.nonzero(self._pivot_of >= 0)[0]]


def incremental_echelon(state: IncrementalEchelon | None, new_rows,
                        cols: int | None = None):
    """Append rows to an echelon state (created if None); returns
    (state, rank)."""
    if state is None:
        if cols is None:
            raise ValueError("cols required for a fresh echelon state")
        state = IncrementalEchelon(cols)
    if isinstance(new_rows, F2Matrix):
        if new_rows.cols != state.cols:
            raise ValueError("column count mismatch")
        state.insert_packed(new_rows.data)
    else:
        for r in new_rows:
            if isinstance(r, (int, np.integer)):
                state.insert_int(int(r))
            else:
                state.insert_packed(np.asarray(r, dtype=np.uint64))
    return state, state.rank


def rank(m: F2Matrix) -> int:
    """Rank over F2; the input is not modified."""
    ech = IncrementalEchelon(m.cols, capacity=m.rows + 1)
    ech.insert_packed(m.data.copy())
    return ech.rank


def kernel_basis(m: F2Matrix) -> list[int]:
    """Basis of {v : m v = 0}, vectors as ints; dimension = cols - rank."""
    ech = IncrementalEchelon(m.cols, capacity=m.rows + 1)
    ech.insert_packed(m.data.copy())
    pivot_cols = np.asarray(ech.pivot_columns(), dtype=np.int64)
    _back_reduce(ech._store, pivot_cols, ech._pivot_of, ech.n_words)
    pivot_set = set(int(c) for c in pivot_cols)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = 1 << f
        wf, bf = f >> 6, np.uint64(f & 63)
        for c in pivot_cols:
            row = ech._pivot_of[c]
            if (ech._store[row, wf] >> bf) & np.uint64(1):
                vec |= 1 << int(c)
        basis.append(vec)
    assert m.cols == ech.rank + len(basis)
    return basis
