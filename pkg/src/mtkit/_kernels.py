"""Compiled kernels for the standard 32-bit parameter set.

The twist is written with phase-split loops (dependency distance 227) so
LLVM auto-vectorizes it; the walker advances a two-generation ring buffer
and tempers only the words selected by the lag plan.  Aggregation kernels
(matrix rank histogram, Hamming pair table) consume value arrays so they
stay independent of the walker.
"""
from __future__ import annotations

import numpy as np
from numba import njit, uint32, uint64

_U = uint32(0x80000000)
_L = uint32(0x7FFFFFFF)
_A = uint32(0x9908B0DF)


@njit(cache=True)
def _seed_fill(mt, s):
    mt[0] = uint32(s)
    for i in range(1, 624):
        prev = mt[i - 1]
        mt[i] = uint32(1812433253) * (prev ^ (prev >> uint32(30))) + uint32(i)


@njit(cache=True)
def _twist_pair(src, dst):
    for j in range(227):
        y = (src[j] & _U) | (src[j + 1] & _L)
        dst[j] = src[j + 397] ^ (y >> uint32(1)) ^ ((uint32(0) - (y & uint32(1))) & _A)
    for j in range(227, 454):
        y = (src[j] & _U) | (src[j + 1] & _L)
        dst[j] = dst[j - 227] ^ (y >> uint32(1)) ^ ((uint32(0) - (y & uint32(1))) & _A)
    for j in range(454, 623):
        y = (src[j] & _U) | (src[j + 1] & _L)
        dst[j] = dst[j - 227] ^ (y >> uint32(1)) ^ ((uint32(0) - (y & uint32(1))) & _A)
    y = (src[623] & _U) | (dst[0] & _L)
    dst[623] = dst[396] ^ (y >> uint32(1)) ^ ((uint32(0) - (y & uint32(1))) & _A)


@njit(cache=True)
def _walk(buf, produced, j_start, stride, offsets, t_len, shift, mask, out):
    """Fill out[k] with windowed tempered words at raw indices
    stride*q + offsets[m]; returns the last produced generation."""
    q = j_start // t_len
    m = j_start % t_len
    for k in range(out.shape[0]):
        idx = stride * q + offsets[m]
        g = idx // 624
        off = idx - g * 624
        while produced < g:
            produced += 1
            _twist_pair(buf[(produced + 1) & 1], buf[produced & 1])
        y = buf[g & 1, off]
        y ^= y >> uint32(11)
        y ^= (y << uint32(7)) & uint32(0x9D2C5680)
        y ^= (y << uint32(15)) & uint32(0xEFC60000)
        y ^= y >> uint32(18)
        out[k] = (y >> uint32(shift)) & uint32(mask)
        m += 1
        if m == t_len:
            m = 0
            q += 1
    return produced


class LaggedWalker:
    """Resumable lagged-sample producer for the standard instance."""

    def __init__(self, seed: int, stride: int, offsets, shift: int, mask: int):
        self.buf = np.zeros((2, 624), dtype=np.uint32)
        _seed_fill(self.buf[1], np.uint32(seed & 0xFFFFFFFF))
        self.produced = -1
        self.j = 0
        self.stride = stride
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.t_len = len(self.offsets)
        self.shift = shift
        self.mask = mask

    def values(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint32)
        self.produced = _walk(self.buf, self.produced, self.j, self.stride,
                              self.offsets, self.t_len, self.shift,
                              self.mask, out)
        self.j += count
        return out


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
def _rank_hist(vals, per_row, L, sigma, hist, piv):
    """Consume vals in groups of L*per_row sigma-bit blocks; histogram the
    ranks of the resulting L x L matrices."""
    nm = vals.shape[0] // (L * per_row)
    i = 0
    for _ in range(nm):
        for c in range(L):
            piv[c] = uint64(0)
        r = 0
        for _row in range(L):
            row = uint64(0)
            for _b in range(per_row):
                row = (row << uint64(sigma)) | uint64(vals[i])
                i += 1
            while row != uint64(0):
                c = _ctz64(row)
                if piv[c] != uint64(0):
                    row ^= piv[c]
                else:
                    piv[c] = row
                    r += 1
                    break
        hist[r] += 1
    return nm


@njit(cache=True)
def _popcount32(x):
    # scalar ops promote past 32 bits, so mask the byte-fold explicitly
    x = uint64(x)
    x = x - ((x >> uint64(1)) & uint64(0x55555555))
    x = (x & uint64(0x33333333)) + ((x >> uint64(2)) & uint64(0x33333333))
    x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F)
    return ((x * uint64(0x01010101)) >> uint64(24)) & uint64(0x3F)


@njit(cache=True)
def _hamming_pairs(vals, per_block, table):
    """Consume vals in groups of per_block sigma-bit windows per L-bit
    block; count non-overlapping (weight, weight) pairs."""
    n_blocks = vals.shape[0] // per_block
    i = 0
    for _pair in range(n_blocks // 2):
        w1 = uint32(0)
        for _b in range(per_block):
            w1 += _popcount32(vals[i])
            i += 1
        w2 = uint32(0)
        for _b in range(per_block):
            w2 += _popcount32(vals[i])
            i += 1
        table[w1, w2] += 1
    return n_blocks // 2 * 2
