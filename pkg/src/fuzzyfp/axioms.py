"""Sampled axiom checkers for t-norms and nearness functions.

Checks are exact where the law is exact (unit law, identity, symmetry) and
carry a 1e-12 slack where floating point noise in products or sums could
produce spurious witnesses.  The full check is deterministic in its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError
from .metrics import TGrid
from .rng import SplitMix64
from .spaces import DELTA_PT, BoxSpace
from .tnorms import TNorm

_SLACK = 1e-12
MAX_WITNESSES = 25


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    magnitude: float


@dataclass(eq=False)
class AxiomReport:
    subject: str
    samples: int
    seed: int
    checks: int = 0
    violation_count: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def _record(self, axiom: str, witness: tuple, magnitude: float):
        self.violation_count += 1
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append(Violation(axiom, witness, magnitude))

    def axiom_ids(self) -> set[str]:
        return {v.axiom for v in self.violations}


def _op_array(op, a, b):
    if isinstance(op, TNorm):
        return op.apply_array(a, b)
    return np.vectorize(op)(a, b)


def check_tnorm_axioms(op, sample_count: int, seed: int) -> AxiomReport:
    """Sample (a, b, c, d) from [0,1]^4 and test the four t-norm laws.

    Commutativity and associativity are tested to 1e-12, monotonicity to the
    same slack, and the unit law a * 1 = a exactly.
    """
    if sample_count < 1:
        raise UsageError("sample_count must be >= 1")
    rng = SplitMix64(seed)
    name = op.kind if isinstance(op, TNorm) else getattr(op, "__name__", "callable")
    report = AxiomReport(subject=f"tnorm:{name}", samples=sample_count, seed=seed)
    for _ in range(sample_count):
        a = rng.uniform()
        b = rng.uniform()
        c = rng.uniform()
        d = rng.uniform()

        report.checks += 1
        comm = abs(op(a, b) - op(b, a))
        if comm > _SLACK:
            report._record("commutativity", (a, b), comm)

        report.checks += 1
        assoc = abs(op(a, op(b, c)) - op(op(a, b), c))
        if assoc > _SLACK:
            report._record("associativity", (a, b, c), assoc)

        report.checks += 1
        unit = op(a, 1.0)
        if unit != a:
            report._record("unit", (a, 1.0), abs(unit - a))

        report.checks += 1
        lo_a, hi_a = min(a, c), max(a, c)
        lo_b, hi_b = min(b, d), max(b, d)
        gap = op(lo_a, lo_b) - op(hi_a, hi_b)
        if gap > _SLACK:
            report._record("monotonicity", (lo_a, lo_b, hi_a, hi_b), gap)
    return report


def _witness_point(p):
    return tuple(np.asarray(p, dtype=float).tolist()) if np.ndim(p) else int(p)


def check_fm_axioms(
    fm, op, triple_count: int, grid: TGrid, seed: int, window=None
) -> AxiomReport:
    """Sample point triples and check the nearness axioms on the grid.

    Positivity, identity and symmetry are checked across the whole grid; the
    triangle law op(mu(x,y,s), mu(y,z,t)) <= mu(x,z,s+t) across all grid
    pairs (s, t).  Monotonicity in t stands in for continuity and is only
    asserted for induced forms; for table-based values it is not certifiable
    by sampling and is left unchecked.
    """
    if triple_count < 1:
        raise UsageError("triple_count must be >= 1")
    carrier = fm.carrier
    if isinstance(carrier, BoxSpace) and not carrier.is_bounded and window is None:
        raise UsageError("sampling an unbounded box requires an explicit window")
    rng = SplitMix64(seed)
    report = AxiomReport(subject=f"fm:{fm.form}", samples=triple_count, seed=seed)
    ts = grid.values
    st_sum = ts[:, None] + ts[None, :]
    for _ in range(triple_count):
        x, y, z = carrier.sample(rng, 3, window)
        mxy = fm.mu_grid(x, y, ts)
        myx = fm.mu_grid(y, x, ts)
        myz = fm.mu_grid(y, z, ts)
        mxx = fm.mu_grid(x, x, ts)

        report.checks += 1
        for row in (mxy, myz):
            bad = row <= 0.0
            if np.any(bad):
                k = int(np.argmax(bad))
                report._record(
                    "positivity",
                    (_witness_point(x), _witness_point(y), float(ts[k])),
                    float(row[k]),
                )
                break

        report.checks += 1
        if np.any(mxx != 1.0):
            k = int(np.argmax(mxx != 1.0))
            report._record(
                "identity", (_witness_point(x), float(ts[k])), abs(1.0 - float(mxx[k]))
            )
        if carrier.distance(x, y) > DELTA_PT and np.any(mxy == 1.0):
            k = int(np.argmax(mxy == 1.0))
            report._record(
                "identity",
                (_witness_point(x), _witness_point(y), float(ts[k])),
                float(carrier.distance(x, y)),
            )

        report.checks += 1
        if np.any(mxy != myx):
            k = int(np.argmax(mxy != myx))
            report._record(
                "symmetry",
                (_witness_point(x), _witness_point(y), float(ts[k])),
                float(np.max(np.abs(mxy - myx))),
            )

        report.checks += 1
        lhs = _op_array(op, mxy[:, None], myz[None, :])
        rhs = fm.mu_grid(x, z, st_sum)
        excess = lhs - rhs
        if np.any(excess > _SLACK):
            i, j = np.unravel_index(int(np.argmax(excess)), excess.shape)
            report._record(
                "triangle",
                (
                    _witness_point(x),
                    _witness_point(y),
                    _witness_point(z),
                    float(ts[i]),
                    float(ts[j]),
                ),
                float(excess[i, j]),
            )

        if fm.monotone_in_t and len(grid) > 1:
            report.checks += 1
            drops = -np.diff(mxy)
            if np.any(drops > _SLACK):
                k = int(np.argmax(drops))
                report._record(
                    "monotone_in_t",
                    (_witness_point(x), _witness_point(y), float(ts[k])),
                    float(drops[k]),
                )
    return report
