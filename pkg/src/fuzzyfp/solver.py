"""Constructive iteration schemes, conclusion verification, uniqueness probe.

Pair scheme: x_n = ST(x_{n-1}), y_n = T(x_{n-1}).  Quadruple scheme runs
full interleaved cycles y_{2n-1} = A(x_{2n-2}), x_{2n-1} = S(y_{2n-1}),
y_{2n} = B(x_{2n-1}), x_{2n} = T(y_{2n}).

Stopping declares convergence on both sequences simultaneously: every
step-nearness value of the most recent steps must reach 1 - eps on the
whole grid.  The limit is the final iterate, no extrapolation.  A run is
flagged diverging when step nearness at the smallest grid scale strictly
decreases for stall_window consecutive steps (or collapses below 1e-300,
which covers exponential-form underflow), and also when an iterate escapes
its carrier; the schemes must terminate on arbitrary inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CodomainError, DomainError, UsageError
from .mappings import MapPair, MapQuadruple
from .metrics import FuzzyMetric, TGrid
from .sequences import SequenceTrace, is_cauchy

_COLLAPSE = 1e-300

STATUS_CONVERGED = "converged"
STATUS_MAX_ITER = "max-iter"
STATUS_DIVERGING = "diverging"


@dataclass(frozen=True, eq=False)
class SolveConfig:
    eps: float = 1e-9
    max_iter: int = 10000
    grid: TGrid = field(default_factory=TGrid.default)
    stall_window: int = 50
    p_max: int = 8
    verify_tol: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise DomainError("eps must lie in (0, 1)")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")
        if self.stall_window < 2:
            raise DomainError("stall_window must be >= 2")
        if self.p_max < 1:
            raise DomainError("p_max must be >= 1")
        if not (0.0 < self.verify_tol < 1.0):
            raise DomainError("verify_tol must lie in (0, 1)")


@dataclass(frozen=True)
class ConclusionCheck:
    name: str
    residual: float
    passed: bool


@dataclass(eq=False)
class FixedPointResult:
    z: object
    w: object
    status: str
    iterations: int
    trace_x: SequenceTrace
    trace_y: SequenceTrace
    conclusion_checks: tuple[ConclusionCheck, ...]

    @property
    def converged(self) -> bool:
        return self.status == STATUS_CONVERGED

    @property
    def conclusions_passed(self) -> bool:
        return bool(self.conclusion_checks) and all(
            c.passed for c in self.conclusion_checks
        )

    @property
    def min_residual(self) -> float:
        if not self.conclusion_checks:
            return float("nan")
        return min(c.residual for c in self.conclusion_checks)


class _DivergenceMonitor:
    """Tracks step nearness at the smallest grid scale."""

    def __init__(self, window: int):
        self.window = window
        self.prev = None
        self.decline_run = 0
        self.collapse_run = 0

    def push(self, value: float) -> bool:
        if self.prev is not None and value < self.prev:
            self.decline_run += 1
        else:
            self.decline_run = 0
        self.collapse_run = self.collapse_run + 1 if value <= _COLLAPSE else 0
        self.prev = value
        return self.decline_run >= self.window or self.collapse_run >= self.window


def _row_near(row: np.ndarray, eps: float) -> bool:
    return bool(np.all(row >= 1.0 - eps))


def _residual(name: str, row: np.ndarray, tol: float) -> ConclusionCheck:
    res = float(np.min(row))
    return ConclusionCheck(name=name, residual=res, passed=res >= 1.0 - tol)


def verify_conclusions_pair(
    pair: MapPair, mu: FuzzyMetric, nu: FuzzyMetric, z, w, grid: TGrid, tol: float
) -> tuple[ConclusionCheck, ...]:
    """Nearness residuals of the four pair-scheme conclusion identities:
    ST z = z, TS w = w, T z = w, S w = z."""
    ts = grid.values
    return (
        _residual("st_z_fixed", mu.mu_grid(pair.st(z), z, ts), tol),
        _residual("ts_w_fixed", nu.mu_grid(pair.ts(w), w, ts), tol),
        _residual("t_z_is_w", nu.mu_grid(pair.T(z), w, ts), tol),
        _residual("s_w_is_z", mu.mu_grid(pair.S(w), z, ts), tol),
    )


def verify_conclusions_quadruple(
    quad: MapQuadruple, mu: FuzzyMetric, nu: FuzzyMetric, z, w, grid: TGrid, tol: float
) -> tuple[ConclusionCheck, ...]:
    """Residuals of the eight quadruple conclusions: SA z = z, TB z = z,
    BS w = w, AT w = w, A z = w, B z = w, S w = z, T w = z."""
    ts = grid.values
    return (
        _residual("sa_z_fixed", mu.mu_grid(quad.sa(z), z, ts), tol),
        _residual("tb_z_fixed", mu.mu_grid(quad.tb(z), z, ts), tol),
        _residual("bs_w_fixed", nu.mu_grid(quad.bs(w), w, ts), tol),
        _residual("at_w_fixed", nu.mu_grid(quad.at(w), w, ts), tol),
        _residual("a_z_is_w", nu.mu_grid(quad.A(z), w, ts), tol),
        _residual("b_z_is_w", nu.mu_grid(quad.B(z), w, ts), tol),
        _residual("s_w_is_z", mu.mu_grid(quad.S(w), z, ts), tol),
        _residual("t_w_is_z", mu.mu_grid(quad.T(w), z, ts), tol),
    )


def iterate_pair(
    pair: MapPair, mu: FuzzyMetric, nu: FuzzyMetric, x0, cfg: SolveConfig | None = None
) -> FixedPointResult:
    """Run the pair scheme from x0 until both step sequences stabilize.

    Returns z = final x iterate and w = T(z) (the y limit under a
    continuous T).  A codomain escape mid-run is recorded as diverging.
    """
    cfg = cfg or SolveConfig()
    x0 = mu.carrier.validate_point(x0)
    ts = cfg.grid.values
    xs = [x0]
    ys = []
    x_rows: list[np.ndarray] = []
    y_rows: list[np.ndarray] = []
    monitor = _DivergenceMonitor(cfg.stall_window)
    status = STATUS_MAX_ITER
    for _ in range(cfg.max_iter):
        try:
            y = pair.T(xs[-1])
            x = pair.S(y)
        except CodomainError:
            status = STATUS_DIVERGING
            break
        ys.append(y)
        xs.append(x)
        x_rows.append(mu.mu_grid(xs[-2], x, ts))
        if len(ys) >= 2:
            y_rows.append(nu.mu_grid(ys[-2], y, ts))
            if _row_near(x_rows[-1], cfg.eps) and _row_near(y_rows[-1], cfg.eps):
                status = STATUS_CONVERGED
                break
        if monitor.push(float(x_rows[-1][0])):
            status = STATUS_DIVERGING
            break

    z = xs[-1]
    try:
        w = pair.T(z)
    except CodomainError:
        w = ys[-1] if ys else None
    trace_x = SequenceTrace(
        points=tuple(xs),
        nearness=np.array(x_rows) if x_rows else np.empty((0, ts.size)),
        grid=cfg.grid,
    )
    trace_y = SequenceTrace(
        points=tuple(ys),
        nearness=np.array(y_rows) if y_rows else np.empty((0, ts.size)),
        grid=cfg.grid,
    )
    checks = (
        verify_conclusions_pair(pair, mu, nu, z, w, cfg.grid, cfg.verify_tol)
        if w is not None
        else ()
    )
    return FixedPointResult(
        z=z,
        w=w,
        status=status,
        iterations=len(xs) - 1,
        trace_x=trace_x,
        trace_y=trace_y,
        conclusion_checks=checks,
    )


def iterate_quadruple(
    quad: MapQuadruple,
    mu: FuzzyMetric,
    nu: FuzzyMetric,
    x0,
    cfg: SolveConfig | None = None,
) -> FixedPointResult:
    """Run the interleaved quadruple scheme from x0 for up to max_iter
    cycles (each cycle advances x and y twice).  Convergence requires all
    four step-nearness rows of the completed cycle to reach 1 - eps."""
    cfg = cfg or SolveConfig()
    x0 = mu.carrier.validate_point(x0)
    ts = cfg.grid.values
    xs = [x0]
    ys = []
    x_rows: list[np.ndarray] = []
    y_rows: list[np.ndarray] = []
    monitor = _DivergenceMonitor(cfg.stall_window)
    status = STATUS_MAX_ITER

    def push_x(p) -> bool:
        xs.append(p)
        x_rows.append(mu.mu_grid(xs[-2], p, ts))
        return monitor.push(float(x_rows[-1][0]))

    def push_y(p):
        ys.append(p)
        if len(ys) >= 2:
            y_rows.append(nu.mu_grid(ys[-2], p, ts))

    for _ in range(cfg.max_iter):
        try:
            y_odd = quad.A(xs[-1])
            push_y(y_odd)
            x_odd = quad.S(y_odd)
            diverged = push_x(x_odd)
            y_even = quad.B(xs[-1])
            push_y(y_even)
            x_even = quad.T(y_even)
            diverged = push_x(x_even) or diverged
        except CodomainError:
            status = STATUS_DIVERGING
            break
        if (
            len(x_rows) >= 2
            and len(y_rows) >= 2
            and all(_row_near(r, cfg.eps) for r in x_rows[-2:])
            and all(_row_near(r, cfg.eps) for r in y_rows[-2:])
        ):
            status = STATUS_CONVERGED
            break
        if diverged:
            status = STATUS_DIVERGING
            break

    z = xs[-1]
    w = ys[-1] if ys else None
    trace_x = SequenceTrace(
        points=tuple(xs),
        nearness=np.array(x_rows) if x_rows else np.empty((0, ts.size)),
        grid=cfg.grid,
    )
    trace_y = SequenceTrace(
        points=tuple(ys),
        nearness=np.array(y_rows) if y_rows else np.empty((0, ts.size)),
        grid=cfg.grid,
    )
    checks = (
        verify_conclusions_quadruple(quad, mu, nu, z, w, cfg.grid, cfg.verify_tol)
        if w is not None
        else ()
    )
    return FixedPointResult(
        z=z,
        w=w,
        status=status,
        iterations=len(xs) - 1,
        trace_x=trace_x,
        trace_y=trace_y,
        conclusion_checks=checks,
    )


def solve(problem, mu, nu, x0, cfg: SolveConfig | None = None) -> FixedPointResult:
    """Dispatch on the problem shape."""
    if isinstance(problem, MapPair):
        return iterate_pair(problem, mu, nu, x0, cfg)
    if isinstance(problem, MapQuadruple):
        return iterate_quadruple(problem, mu, nu, x0, cfg)
    raise UsageError(f"cannot solve problem of type {type(problem).__name__}")


@dataclass(eq=False)
class UniquenessReport:
    conclusive: bool
    passed: bool | None
    max_z_distance: float | None
    max_w_distance: float | None
    statuses: tuple[str, ...]
    tol: float
    zs: tuple
    ws: tuple


def uniqueness_probe(
    problem,
    mu: FuzzyMetric,
    nu: FuzzyMetric,
    starts,
    cfg: SolveConfig | None = None,
    tol: float = 1e-6,
) -> UniquenessReport:
    """Solve from several starts and compare the returned fixed points.

    Passes iff the largest pairwise crisp distance among the z's and among
    the w's is at most tol.  Any non-converged run makes the probe
    inconclusive (passed = None).
    """
    starts = list(starts)
    if len(starts) < 2:
        raise UsageError("uniqueness probe needs at least two starting points")
    results = [solve(problem, mu, nu, s, cfg) for s in starts]
    statuses = tuple(r.status for r in results)
    zs = tuple(r.z for r in results)
    ws = tuple(r.w for r in results)
    if any(s != STATUS_CONVERGED for s in statuses):
        return UniquenessReport(
            conclusive=False,
            passed=None,
            max_z_distance=None,
            max_w_distance=None,
            statuses=statuses,
            tol=tol,
            zs=zs,
            ws=ws,
        )
    max_z = max(
        mu.carrier.distance(a, b) for i, a in enumerate(zs) for b in zs[i + 1 :]
    )
    max_w = max(
        nu.carrier.distance(a, b) for i, a in enumerate(ws) for b in ws[i + 1 :]
    )
    return UniquenessReport(
        conclusive=True,
        passed=(max_z <= tol and max_w <= tol),
        max_z_distance=max_z,
        max_w_distance=max_w,
        statuses=statuses,
        tol=tol,
        zs=zs,
        ws=ws,
    )


def cauchy_certificate(
    result: FixedPointResult, fm: FuzzyMetric, grid: TGrid, eps: float, p_max: int
) -> bool:
    """Post-hoc check that a converged trace also satisfies the sampled
    Cauchy predicate at the given eps."""
    return is_cauchy(result.trace_x, fm, grid, eps, p_max)
