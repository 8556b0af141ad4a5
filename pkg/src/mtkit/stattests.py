"""Birthday spacings, overlapping collision, matrix rank, and Hamming
independence tests with two-level Poisson summation and exact tail
p-values.

Every test consumes the top bits of tau-skipped samples through the bulk
stream interface, so a run is reproducible bit-for-bit from (conversion,
lag set, tau, seed).  p-values far below float range are reported through
their log10; mpmath supplies the incomplete-gamma tails.

Parameters
----------
Each test takes a TestConfig and a sample stream.  The stream must provide
top_bits_chunks(nb, total, chunk) yielding uint32 arrays; SampleStream does,
and any high-quality reference generator with the same method can be used
for calibration.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import _kernels, cache as _cache
from .streams import SampleStream, StreamConfig

__all__ = [
    "TestConfig", "TestResult", "PRESETS",
    "birthday_spacings", "overlap_collision", "matrix_rank_test",
    "hamming_independence", "p_value_poisson", "p_value_chisq",
    "run_test", "rank_distribution",
]


@dataclass(frozen=True)
class TestConfig:
    """Parameters of one test run (names follow the battery conventions)."""

    test: str
    n_rep: int = 1          # replications summed into one statistic
    n: int = 0              # points / samples / matrices / blocks
    tau: int = 0            # MSBs skipped per sample
    d: int = 0              # segments per axis (cell tests)
    t: int = 0              # dimension (cell tests)
    L: int = 0              # matrix side / block length in bits
    sigma: int = 0          # bits taken per number (rank, Hamming)

    def __post_init__(self) -> None:
        if self.test not in ("birthday", "overlap_collision", "matrix_rank",
                             "hamming_indep"):
            raise ValueError(f"unknown test {self.test!r}")
        if self.n <= 0 or self.n_rep <= 0:
            raise ValueError("n and n_rep must be positive")
        if self.test in ("birthday", "overlap_collision"):
            if self.d < 2 or self.t < 1:
                raise ValueError("cell tests need d >= 2 and t >= 1")
            if self.d & (self.d - 1):
                raise ValueError("d must be a power of two")
            if self.d ** self.t >= 1 << 128:
                raise ValueError("d**t exceeds the 128-bit cell index bound")
            if self.test == "overlap_collision" and self.n > self.d ** self.t:
                raise ValueError("collision test needs n <= d**t")
        if self.test == "matrix_rank":
            if self.sigma <= 0 or self.L <= 0 or self.L % self.sigma:
                raise ValueError("sigma must divide L")
            if self.L > 64:
                raise ValueError("L beyond one machine word is unsupported")
        if self.test == "hamming_indep":
            if self.sigma <= 0 or self.L <= 0:
                raise ValueError("need sigma > 0 and L > 0")

    @property
    def cell_bits(self) -> int:
        return self.d.bit_length() - 1

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("test", "n_rep", "n", "tau", "d", "t", "L", "sigma")}


PRESETS = {
    # battery tuples this toolkit reproduces
    "bigcrush14": TestConfig("birthday", n_rep=20, n=2 * 10 ** 7, tau=0,
                             d=2 ** 21, t=3),
    "bigcrush5": TestConfig("overlap_collision", n_rep=30, n=2 * 10 ** 7,
                            tau=0, d=2 ** 14, t=3),
    "bigcrush6": TestConfig("overlap_collision", n_rep=30, n=2 * 10 ** 7,
                            tau=16, d=2 ** 14, t=3),
    "smallcrush8": TestConfig("matrix_rank", n_rep=1, n=20000, tau=20,
                              L=60, sigma=10),
    "crush86": TestConfig("hamming_indep", n_rep=1, n=10 ** 8, tau=20,
                          L=30, sigma=10),
}


@dataclass
class TestResult:
    config: TestConfig
    statistic: float
    expected: float
    p_value: float
    log10_p: float
    verdict: str
    details: dict = field(default_factory=dict)
    stream: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {"test": self.config.test, "params": self.config.to_dict(),
                **self.stream, "statistic": self.statistic,
                "expected": self.expected, "p_value": self.p_value,
                "log10_p": self.log10_p, "verdict": self.verdict,
                "details": self.details, "elapsed": round(self.elapsed, 3)}


def _verdict(p: float, log10_p: float) -> str:
    if log10_p < -10:
        return "fail"
    if p < 1e-3:
        return "suspect"
    if p > 1 - 1e-3:
        return "suspect-high"
    return "pass"


def _finite(*xs) -> None:
    for x in xs:
        if not math.isfinite(x):
            raise ValueError("non-finite input")


def p_value_poisson(observed: int, mean: float) -> float:
    """Right tail P(Y >= observed) for Y ~ Poisson(mean)."""
    return _poisson_tail(observed, mean)[0]


def p_value_chisq(stat: float, dof: int) -> float:
    """Right tail P(X >= stat) for X ~ chi-square(dof)."""
    return _chisq_tail(stat, dof)[0]


def _poisson_tail(observed: int, mean: float) -> tuple[float, float]:
    _finite(mean)
    if mean <= 0:
        raise ValueError("mean must be positive")
    if observed < 0:
        raise ValueError("observed count must be >= 0")
    if observed == 0:
        return 1.0, 0.0
    with mpmath.workdps(50):
        # P(Y >= k) equals the regularized lower incomplete gamma P(k, mean)
        p = mpmath.gammainc(observed, 0, mean, regularized=True)
        return float(p), float(mpmath.log10(p)) if p > 0 else float("-inf")


def _chisq_tail(stat: float, dof: int) -> tuple[float, float]:
    _finite(stat)
    if dof < 1:
        raise ValueError("dof must be >= 1")
    if stat < 0:
        raise ValueError("chi-square statistic must be >= 0")
    if stat == 0:
        return 1.0, 0.0
    with mpmath.workdps(50):
        p = mpmath.gammainc(dof / 2, stat / 2, mpmath.inf, regularized=True)
        return float(p), float(mpmath.log10(p)) if p > 0 else float("-inf")


def _collect(chunks, count: int, dtype=np.uint32) -> "_Collector":
    return _Collector(chunks, count, dtype)


class _Collector:
    """Reassembles a chunked value stream into fixed-size requests."""

    def __init__(self, chunks, total: int, dtype):
        self._chunks = chunks
        self._left = total
        self._buf = np.empty(0, dtype=dtype)

    def take(self, count: int) -> np.ndarray:
        parts = []
        need = count
        if self._buf.size:
            cut = min(need, self._buf.size)
            parts.append(self._buf[:cut])
            self._buf = self._buf[cut:]
            need -= cut
        while need > 0:
            arr = next(self._chunks)
            if arr.size > need:
                parts.append(arr[:need])
                self._buf = arr[need:]
                need = 0
            else:
                parts.append(arr)
                need -= arr.size
        self._left -= count
        return parts[0] if len(parts) == 1 else np.concatenate(parts)


def _pack_cells(points: np.ndarray, nb: int) -> np.ndarray:
    """(n, t) coordinate rows -> uint64 cell indices."""
    t = points.shape[1]
    cells = points[:, 0].astype(np.uint64)
    for j in range(1, t):
        cells = (cells << np.uint64(nb)) | points[:, j].astype(np.uint64)
    return cells


def birthday_spacings(config: TestConfig, stream) -> TestResult:
    """Sorted cell indices, spacings, count of equal adjacent spacings;
    the counts are summed over replications against a Poisson tail."""
    t0 = time.perf_counter()
    n, t, nb = config.n, config.t, config.cell_bits
    if t * nb > 63:
        raise ValueError("cell index exceeds 63 bits")
    lam = config.n_rep * Fraction(n) ** 3 / (4 * Fraction(config.d) ** t)
    total = config.n_rep * n * t
    col = _collect(stream.top_bits_chunks(nb, total), total)
    y = 0
    per_rep = []
    for _ in range(config.n_rep):
        vals = col.take(n * t)
        cells = _pack_cells(vals.reshape(n, t), nb)
        cells.sort()
        spacings = np.diff(cells)
        spacings.sort()
        y_rep = int(np.count_nonzero(spacings[1:] == spacings[:-1]))
        per_rep.append(y_rep)
        y += y_rep
    p, log10_p = _poisson_tail(y, float(lam))
    return TestResult(config, y, float(lam), p, log10_p,
                      _verdict(p, log10_p), {"per_rep": per_rep},
                      _stream_meta(stream), time.perf_counter() - t0)


def overlap_collision(config: TestConfig, stream) -> TestResult:
    """Overlapping t-tuples with circular wraparound; C = points that land
    in an occupied cell, summed over replications."""
    t0 = time.perf_counter()
    n, t, nb = config.n, config.t, config.cell_bits
    if t * nb > 63:
        raise ValueError("cell index exceeds 63 bits")
    lam = config.n_rep * Fraction(n) ** 2 / (2 * Fraction(config.d) ** t)
    total = config.n_rep * n
    col = _collect(stream.top_bits_chunks(nb, total), total)
    c_sum = 0
    per_rep = []
    # bitmap up to 2**27 cells (128 MB of bool); sort+unique above that
    dense = config.d ** t <= 1 << 27
    for _ in range(config.n_rep):
        u = col.take(n)
        points = np.empty((n, t), dtype=np.uint32)
        for j in range(t):
            points[:, j] = np.roll(u, -j)
        cells = _pack_cells(points, nb)
        if dense:
            occupied = np.zeros(config.d ** t, dtype=bool)
            occupied[cells] = True
            c_rep = n - int(np.count_nonzero(occupied))
        else:
            c_rep = n - int(np.unique(cells).size)
        per_rep.append(c_rep)
        c_sum += c_rep
    p, log10_p = _poisson_tail(c_sum, float(lam))
    return TestResult(config, c_sum, float(lam), p, log10_p,
                      _verdict(p, log10_p), {"per_rep": per_rep},
                      _stream_meta(stream), time.perf_counter() - t0)


def rank_distribution(L: int) -> list:
    """P(rank = r) for a uniform L x L matrix over F2, r = 0..L (mpmath)."""
    probs = []
    with mpmath.workdps(60):
        for r in range(L + 1):
            p = mpmath.mpf(2) ** (r * (2 * L - r) - L * L)
            for j in range(r):
                p *= (1 - mpmath.mpf(2) ** (j - L)) ** 2 / \
                     (1 - mpmath.mpf(2) ** (j - r))
            probs.append(p)
    return probs


def _merge_classes(observed: np.ndarray, expected: list) -> tuple:
    """Coalesce every class with expectation < 10 into one (scan order)."""
    keep_o, keep_e = [], []
    merged_o, merged_e = 0, 0.0
    for o, e in zip(observed, expected):
        if e < 10:
            merged_o += int(o)
            merged_e += float(e)
        else:
            keep_o.append(int(o))
            keep_e.append(float(e))
    if merged_e > 0:
        keep_o.append(merged_o)
        keep_e.append(merged_e)
    return np.array(keep_o, dtype=np.int64), np.array(keep_e)


def matrix_rank_test(config: TestConfig, stream) -> TestResult:
    """Ranks of n L x L matrices filled row-wise from sigma-bit windows,
    chi-squared against the exact random-matrix rank law."""
    t0 = time.perf_counter()
    L, sigma, n = config.L, config.sigma, config.n
    per_row = L // sigma
    total = config.n_rep * n * L * per_row
    hist = np.zeros(L + 1, dtype=np.int64)
    piv = np.zeros(64, dtype=np.uint64)
    per_matrix = L * per_row
    chunk_m = max(1, (1 << 22) // per_matrix)
    col = _collect(stream.top_bits_chunks(sigma, total), total)
    left = config.n_rep * n
    while left > 0:
        m = min(chunk_m, left)
        vals = col.take(m * per_matrix)
        _kernels._rank_hist(vals, per_row, L, sigma, hist, piv)
        left -= m
    probs = rank_distribution(L)
    n_total = config.n_rep * n
    expected = [float(p * n_total) for p in probs]
    obs_m, exp_m = _merge_classes(hist, expected)
    stat = float(np.sum((obs_m - exp_m) ** 2 / exp_m))
    dof = len(obs_m) - 1
    p, log10_p = _chisq_tail(stat, dof)
    details = {"rank_hist": {str(r): int(c) for r, c in enumerate(hist) if c},
               "classes": len(obs_m), "dof": dof}
    return TestResult(config, stat, float(dof), p, log10_p,
                      _verdict(p, log10_p), details,
                      _stream_meta(stream), time.perf_counter() - t0)


def hamming_independence(config: TestConfig, stream) -> TestResult:
    """Hamming weights of 2n L-bit blocks; the (L+1)^2 pair table of
    consecutive non-overlapping pairs is chi-squared against independent
    binomial weights."""
    t0 = time.perf_counter()
    L, sigma, n = config.L, config.sigma, config.n
    per_block = -(-L // sigma)
    if per_block * sigma != L:
        raise ValueError("sigma must tile L exactly")
    total = config.n_rep * 2 * n * per_block
    table = np.zeros((L + 1, L + 1), dtype=np.int64)
    col = _collect(stream.top_bits_chunks(sigma, total), total)
    pair_vals = 2 * per_block
    chunk_p = max(1, (1 << 22) // pair_vals)
    left = config.n_rep * n
    while left > 0:
        m = min(chunk_p, left)
        vals = col.take(m * pair_vals)
        _kernels._hamming_pairs(vals, per_block, table)
        left -= m
    n_pairs = config.n_rep * n
    wp = np.array([math.comb(L, w) for w in range(L + 1)], dtype=float)
    wp /= 2.0 ** L
    expected = np.outer(wp, wp) * n_pairs
    obs_m, exp_m = _merge_classes(table.ravel(), list(expected.ravel()))
    stat = float(np.sum((obs_m - exp_m) ** 2 / exp_m))
    dof = len(obs_m) - 1
    p, log10_p = _chisq_tail(stat, dof)
    details = {"classes": len(obs_m), "dof": dof}
    return TestResult(config, stat, float(dof), p, log10_p,
                      _verdict(p, log10_p), details,
                      _stream_meta(stream), time.perf_counter() - t0)


_RUNNERS = {
    "birthday": birthday_spacings,
    "overlap_collision": overlap_collision,
    "matrix_rank": matrix_rank_test,
    "hamming_indep": hamming_independence,
}


def _stream_meta(stream) -> dict:
    meta = {}
    if hasattr(stream, "seed"):
        meta["seed"] = stream.seed
    cfg = getattr(stream, "config", None)
    if cfg is not None:
        meta["conversion"] = cfg.conversion
        meta["lags"] = list(cfg.lag_set) if cfg.lag_set else None
    return meta


def run_test(config: TestConfig, conversion: str, lags, seed: int,
             use_cache: bool = True) -> TestResult:
    """Cached entry point binding a config to a seeded stream."""
    key = {"config": config.to_dict(), "conversion": conversion,
           "lags": list(lags) if lags else None, "seed": seed}
    if use_cache:
        hit = _cache.get("stattest", key)
        if hit is not None:
            cfg = TestConfig(**hit["config"])
            return TestResult(cfg, hit["statistic"], hit["expected"],
                              hit["p_value"], hit["log10_p"], hit["verdict"],
                              hit["details"], hit["stream"], hit["elapsed"])
    stream = SampleStream(seed, StreamConfig(
        conversion=conversion,
        lag_set=tuple(lags) if lags else None,
        tau=config.tau))
    result = _RUNNERS[config.test](config, stream)
    if use_cache:
        _cache.put("stattest", key, {
            "config": config.to_dict(), "statistic": result.statistic,
            "expected": result.expected, "p_value": result.p_value,
            "log10_p": result.log10_p, "verdict": result.verdict,
            "details": result.details, "stream": result.stream,
            "elapsed": result.elapsed})
    return result
