"""Carrier spaces: closed boxes in R^n and finite sets with a crisp metric.

Completeness of the carriers is assumed, not verified: closed boxes
(bounded or not) and finite sets are complete for the metrics offered here.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, UsageError

# Two points closer than this (in the carrier's crisp metric) are treated
# as equal.  Needed because box carriers live in floating point.
DELTA_PT = 1e-9

_CRISP_METRICS = ("euclidean", "max")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


class BoxSpace:
    """Axis-aligned closed box in R^n; bounds may be infinite (whole of R^n)."""

    kind = "box"

    def __init__(self, lo, hi, crisp_metric: str = "euclidean"):
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if lo.ndim != 1 or hi.ndim != 1 or lo.shape != hi.shape or lo.size == 0:
            raise DomainError("box bounds must be equal-length non-empty vectors")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise DomainError("box bounds must not be NaN")
        if not np.all(lo < hi):
            raise DomainError("box bounds require lo < hi in every coordinate")
        if crisp_metric not in _CRISP_METRICS:
            raise DomainError(f"unknown crisp metric {crisp_metric!r}")
        self.lo = _freeze(lo)
        self.hi = _freeze(hi)
        self.crisp_metric = crisp_metric

    @property
    def dimension(self) -> int:
        return self.lo.size

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lo)) and np.all(np.isfinite(self.hi)))

    def contains(self, x, atol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != self.lo.shape or not np.all(np.isfinite(x)):
            return False
        return bool(np.all(x >= self.lo - atol) and np.all(x <= self.hi + atol))

    def validate_point(self, x) -> np.ndarray:
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        if arr.shape != self.lo.shape:
            raise DomainError(
                f"point of dimension {arr.size} in box of dimension {self.dimension}"
            )
        if not np.all(np.isfinite(arr)):
            raise DomainError("point coordinates must be finite")
        if not self.contains(arr):
            raise DomainError(f"point {arr.tolist()} outside box carrier")
        return _freeze(arr)

    def distance(self, x, y) -> float:
        d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        if self.crisp_metric == "euclidean":
            return math.sqrt(float(np.dot(d, d)))
        return float(np.max(np.abs(d)))

    def sample(self, rng, count: int, window=None) -> list[np.ndarray]:
        """Uniform points from the box, or from an explicit (lo, hi) window."""
        if window is not None:
            lo = np.asarray(window[0], dtype=float)
            hi = np.asarray(window[1], dtype=float)
        else:
            lo, hi = self.lo, self.hi
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise UsageError("cannot sample an unbounded box; pass a finite window")
        pts = []
        for _ in range(count):
            coords = np.array(
                [rng.uniform(lo[i], hi[i]) for i in range(self.dimension)]
            )
            pts.append(_freeze(coords))
        return pts


class FiniteSpace:
    """Finite carrier given by a symmetric distance table (a crisp metric)."""

    kind = "finite"

    def __init__(self, table):
        t = np.asarray(table, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise DomainError("distance table must be square and non-empty")
        n = t.shape[0]
        if not np.all(np.isfinite(t)) or np.any(t < 0):
            raise DomainError("distance table must be finite and nonnegative")
        if np.any(np.diagonal(t) != 0.0):
            raise DomainError("distance table must have a zero diagonal")
        if not np.array_equal(t, t.T):
            raise DomainError("distance table must be symmetric")
        off = t + np.eye(n)
        if np.any(off <= 0.0):
            raise DomainError("distinct points must have positive distance")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[i, k] > t[i, j] + t[j, k] + 1e-12:
                        raise DomainError(
                            f"triangle inequality fails at ({i}, {j}, {k})"
                        )
        self.table = _freeze(t)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def contains(self, i) -> bool:
        return isinstance(i, (int, np.integer)) and 0 <= int(i) < self.size

    def validate_point(self, i) -> int:
        if not self.contains(i):
            raise DomainError(f"index {i!r} not in finite carrier of size {self.size}")
        return int(i)

    def distance(self, i, j) -> float:
        return float(self.table[int(i), int(j)])

    def sample(self, rng, count: int, window=None) -> list[int]:
        return [rng.randint(self.size) for _ in range(count)]


def points_equal(carrier, a, b, tol: float = DELTA_PT) -> bool:
    """Tolerance-based point equality in the carrier's crisp metric."""
    return carrier.distance(a, b) <= tol
