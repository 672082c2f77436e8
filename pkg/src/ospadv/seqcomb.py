"""Normalized central binomial coefficients and the sums built from them.

The sequence ``xi[i] = C(2i, i) / 4**i`` is generated by the ratio
``xi[i+1] / xi[i] = (2i+1) / (2i+2)``, so no binomial coefficient is ever
formed and nothing overflows.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "XiTable",
    "xi_table",
    "xi",
    "convolve_xi",
    "correlation",
    "correlations",
    "harmonic",
]


@dataclass(frozen=True)
class XiTable:
    """Read-only prefix ``xi[0], ..., xi[k]`` of the sequence."""

    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _xi_prefix(k: int) -> np.ndarray:
    # Accumulate in extended precision: a float64 running product drifts by
    # ~1e-13 relative at k = 10**6, the longdouble one stays below 1e-16.
    out = np.empty(k + 1, dtype=np.longdouble)
    out[0] = 1
    if k:
        i = np.arange(k, dtype=np.longdouble)
        out[1:] = np.cumprod((2 * i + 1) / (2 * i + 2))
    return out.astype(float)


@lru_cache(maxsize=32)
def _cached_table(k: int) -> XiTable:
    return XiTable(_xi_prefix(k))


def xi_table(k: int) -> XiTable:
    """Return the table of ``xi[0..k]`` (``k + 1`` entries)."""
    if k < 0:
        raise ValueError(f"table length index must be >= 0, got {k}")
    # round up so neighbouring sizes share one cache entry
    size = max(64, 1 << int(k).bit_length())
    table = _cached_table(size)
    return XiTable(table.values[: k + 1].copy())


def xi(i: int) -> float:
    """``C(2i, i) / 4**i`` via the multiplicative recurrence."""
    if i < 0:
        raise ValueError(f"index must be >= 0, got {i}")
    return float(xi_table(i).values[i])


def convolve_xi(j: int) -> float:
    """Self-convolution ``sum_{i<=j} xi[i] * xi[j-i]``; identically 1."""
    if j < 0:
        raise ValueError(f"index must be >= 0, got {j}")
    x = xi_table(j).values
    return float(np.dot(x, x[::-1]))


def correlation(m: int, j: int) -> float:
    """Truncated correlation ``A_m(j) = sum_{i=0}^{m-j-1} xi[i] * xi[i+j]``.

    Zero when ``j >= m``.
    """
    if m < 1 or j < 0:
        raise ValueError(f"need m >= 1 and j >= 0, got m={m}, j={j}")
    if j >= m:
        return 0.0
    x = xi_table(m - 1).values
    # increasing i, plain left-to-right summation
    return float(sum((x[: m - j] * x[j:m]).tolist()))


def correlations(m: int, length: int | None = None) -> np.ndarray:
    """Vector ``[A_m(0), A_m(1), ..., A_m(length-1)]``, zero-padded past ``m``.

    ``m = 0`` gives the all-zero vector (empty sums).
    """
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    if length is None:
        length = m + 1
    out = np.zeros(length)
    if m == 0:
        return out
    x = xi_table(m - 1).values
    # full linear correlation; entry j of the tail is sum_i x[i] x[i+j]
    full = np.correlate(x, x, mode="full")[m - 1:]
    k = min(length, m)
    out[:k] = full[:k]
    return out


def harmonic(n: int) -> float:
    """The harmonic number ``H_n = 1 + 1/2 + ... + 1/n``; ``H_0 = 0``."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return float(sum(1.0 / i for i in range(1, n + 1)))
