"""Degree-of-nearness functions mu(x, y, t) over a carrier, and the t-grid.

The quantifier "for all t > 0" is replaced everywhere by a finite grid of
positive scales; the default is 17 log-spaced points in [1e-2, 1e2].  Every
report records the grid it was computed on.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .spaces import FiniteSpace

_TINY = float(np.finfo(float).tiny)

DEFAULT_T_MIN = 1e-2
DEFAULT_T_MAX = 1e2
DEFAULT_T_COUNT = 17


class TGrid:
    """Strictly increasing positive scales at which nearness is evaluated."""

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.atleast_1d(np.asarray(values, dtype=float))
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("t-grid must be a non-empty vector")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise DomainError("t-grid values must be finite and positive")
        if arr.size > 1 and not np.all(np.diff(arr) > 0.0):
            raise DomainError("t-grid values must be strictly increasing")
        arr = arr.copy()
        arr.setflags(write=False)
        self.values = arr

    @classmethod
    def logspace(
        cls,
        t_min: float = DEFAULT_T_MIN,
        t_max: float = DEFAULT_T_MAX,
        count: int = DEFAULT_T_COUNT,
    ) -> "TGrid":
        if count < 1:
            raise DomainError("t-grid needs at least one point")
        if count == 1:
            return cls([t_min])
        return cls(np.logspace(math.log10(t_min), math.log10(t_max), count))

    @classmethod
    def default(cls) -> "TGrid":
        return cls.logspace()

    def with_t_max(self, t_max: float) -> "TGrid":
        """Same point count and t_min, rebuilt log-spaced up to t_max."""
        return TGrid.logspace(self.t_min, t_max, len(self))

    @property
    def t_min(self) -> float:
        return float(self.values[0])

    @property
    def t_max(self) -> float:
        return float(self.values[-1])

    def __len__(self) -> int:
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return f"TGrid({self.values.tolist()!r})"


def _check_ts(ts) -> np.ndarray:
    arr = np.asarray(ts, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("nearness scale t must be positive and finite")
    return arr


class FuzzyMetric:
    """Base type: mu(x, y, t) in (0, 1], symmetric, with mu(x, x, t) = 1."""

    form = "base"
    monotone_in_t = False

    def __init__(self, carrier):
        self.carrier = carrier

    def mu(self, x, y, t: float) -> float:
        raise NotImplementedError

    def mu_grid(self, x, y, ts) -> np.ndarray:
        """Vectorized evaluation over an array of scales."""
        raise NotImplementedError

    def pairwise(self, pts_a, pts_b, ts) -> np.ndarray:
        """Array of shape (len(pts_a), len(pts_b), len(ts))."""
        ts = _check_ts(ts)
        out = np.empty((len(pts_a), len(pts_b), ts.size))
        for i, a in enumerate(pts_a):
            for j, b in enumerate(pts_b):
                out[i, j] = self.mu_grid(a, b, ts)
        return out


class _InducedFuzzyMetric(FuzzyMetric):
    """Nearness induced from the carrier's crisp metric."""

    monotone_in_t = True

    def _from_d(self, d, ts):
        raise NotImplementedError

    def mu(self, x, y, t: float) -> float:
        ts = _check_ts(float(t))
        return float(self._from_d(self.carrier.distance(x, y), ts))

    def mu_grid(self, x, y, ts) -> np.ndarray:
        ts = _check_ts(ts)
        return self._from_d(self.carrier.distance(x, y), ts)

    def pairwise(self, pts_a, pts_b, ts) -> np.ndarray:
        ts = _check_ts(np.atleast_1d(ts))
        d = np.empty((len(pts_a), len(pts_b)))
        for i, a in enumerate(pts_a):
            for j, b in enumerate(pts_b):
                d[i, j] = self.carrier.distance(a, b)
        return self._from_d(d[:, :, None], ts[None, None, :])


class StandardFuzzyMetric(_InducedFuzzyMetric):
    """mu(x, y, t) = t / (t + d(x, y))."""

    form = "standard"

    def _from_d(self, d, ts):
        return ts / (ts + d)


class ExponentialFuzzyMetric(_InducedFuzzyMetric):
    """mu(x, y, t) = exp(-d(x, y) / t), floored at the smallest normal float
    so that evaluations stay strictly positive even when exp underflows."""

    form = "exponential"

    def _from_d(self, d, ts):
        return np.maximum(np.exp(-(d / ts)), _TINY)


class TableFuzzyMetric(FuzzyMetric):
    """Nearness stored per (pair, grid scale) on a finite carrier.

    Values are interpolated log-linearly in t between the stored grid points
    and clamped to the endpoint values outside the grid.  Only structural
    validity is enforced here; the nearness axioms are the job of
    check_fm_axioms, so deliberately broken tables can be constructed.
    """

    form = "table"

    def __init__(self, carrier: FiniteSpace, grid: TGrid, values):
        if not isinstance(carrier, FiniteSpace):
            raise DomainError("table-based nearness requires a finite carrier")
        super().__init__(carrier)
        vals = np.asarray(values, dtype=float)
        expect = (carrier.size, carrier.size, len(grid))
        if vals.shape != expect:
            raise DomainError(f"table values must have shape {expect}, got {vals.shape}")
        if np.any(~np.isfinite(vals)) or np.any(vals <= 0.0) or np.any(vals > 1.0):
            raise DomainError("table values must lie in (0, 1]")
        vals = vals.copy()
        vals.setflags(write=False)
        self.grid = grid
        self.values = vals
        self._log_grid = np.log(grid.values)

    def mu(self, x, y, t: float) -> float:
        return float(self.mu_grid(x, y, float(t)))

    def mu_grid(self, x, y, ts) -> np.ndarray:
        ts = _check_ts(ts)
        i = self.carrier.validate_point(x)
        j = self.carrier.validate_point(y)
        # np.interp clamps to endpoints, which is the documented extrapolation
        return np.interp(np.log(ts), self._log_grid, self.values[i, j])


def induced_standard(carrier) -> StandardFuzzyMetric:
    return StandardFuzzyMetric(carrier)


def induced_exponential(carrier) -> ExponentialFuzzyMetric:
    return ExponentialFuzzyMetric(carrier)


def eval_mu(fm: FuzzyMetric, x, y, t: float) -> float:
    """Guarded evaluation entry point: validates the points and t > 0."""
    x = fm.carrier.validate_point(x)
    y = fm.carrier.validate_point(y)
    return fm.mu(x, y, t)


__all__ = [
    "TGrid",
    "FuzzyMetric",
    "StandardFuzzyMetric",
    "ExponentialFuzzyMetric",
    "TableFuzzyMetric",
    "induced_standard",
    "induced_exponential",
    "eval_mu",
    "DEFAULT_T_MIN",
    "DEFAULT_T_MAX",
    "DEFAULT_T_COUNT",
]
