import json

import numpy as np
import pytest

from fuzzyfp import (
    ConfigError,
    InstanceSpec,
    SampleSet,
    TGrid,
    UsageError,
    estimate_k_pair,
    gen_instance,
    run_suite,
    solve,
)
from fuzzyfp.mappings import ConstantMap


def _inf_norm(m):
    return float(np.max(np.sum(np.abs(m), axis=1)))


class TestGenInstance:
    def test_regeneration_is_bit_identical(self):
        spec = InstanceSpec(scheme="pair", dim=2, seed=1, factor_lo=0.3, factor_hi=0.3)
        a = gen_instance(spec)
        b = gen_instance(spec)
        assert a.problem.T.matrix.tobytes() == b.problem.T.matrix.tobytes()
        assert a.problem.S.offset.tobytes() == b.problem.S.offset.tobytes()
        assert np.array_equal(a.x0, b.x0)

    def test_operator_norm_bounded_by_factor(self):
        spec = InstanceSpec(scheme="pair", dim=2, seed=1, factor_lo=0.3, factor_hi=0.3)
        inst = gen_instance(spec)
        assert _inf_norm(inst.problem.T.matrix) <= 0.3 + 1e-12
        assert _inf_norm(inst.problem.S.matrix) <= 0.3 + 1e-12

    def test_many_seeds_distinct_and_contractive(self):
        seen = set()
        for seed in range(100):
            spec = InstanceSpec(
                scheme="pair", dim=2, seed=seed, factor_lo=0.05, factor_hi=0.9
            )
            inst = gen_instance(spec)
            m_t, m_s = inst.problem.T.matrix, inst.problem.S.matrix
            seen.add(m_t.tobytes())
            # composite contraction via norm sub-multiplicativity
            assert _inf_norm(m_s @ m_t) <= _inf_norm(m_s) * _inf_norm(m_t) + 1e-12
            assert _inf_norm(m_s) * _inf_norm(m_t) < 1.0
        assert len(seen) == 100

    def test_constant_family(self):
        spec = InstanceSpec(scheme="pair", family="constant", dim=2, seed=3)
        inst = gen_instance(spec)
        assert isinstance(inst.problem.T, ConstantMap)
        assert isinstance(inst.problem.S, ConstantMap)
        assert inst.mu.carrier.contains(inst.problem.S.value)

    def test_pair_expected_fixed_point_matches_solve(self):
        spec = InstanceSpec(scheme="pair", dim=2, seed=11)
        inst = gen_instance(spec)
        res = solve(inst.problem, inst.mu, inst.nu, inst.x0)
        assert res.converged
        # the linear-algebra oracle is independent of the iteration
        assert np.linalg.norm(res.z - inst.expected_z) <= 1e-8
        assert np.linalg.norm(res.w - inst.expected_w) <= 1e-8

    def test_quadruple_targets_shared_fixed_pair(self):
        spec = InstanceSpec(scheme="quadruple", dim=2, seed=5)
        inst = gen_instance(spec)
        q = inst.problem
        z0, w0 = inst.expected_z, inst.expected_w
        assert np.allclose(q.A(z0), w0, atol=1e-12)
        assert np.allclose(q.B(z0), w0, atol=1e-12)
        assert np.allclose(q.S(w0), z0, atol=1e-12)
        assert np.allclose(q.T(w0), z0, atol=1e-12)

    def test_self_quadruple_lives_on_one_carrier(self):
        spec = InstanceSpec(scheme="self-quadruple", dim=1, seed=9)
        inst = gen_instance(spec)
        assert inst.mu is inst.nu
        assert inst.problem.A.codomain is inst.mu.carrier

    def test_expansive_uses_unbounded_carrier(self):
        spec = InstanceSpec(
            scheme="pair", dim=2, seed=2, factor_lo=1.1, factor_hi=1.9, expansive=True
        )
        inst = gen_instance(spec)
        assert not inst.mu.carrier.is_bounded
        # scaled orthogonal matrices: singular values all equal the factor
        svals = np.linalg.svd(inst.problem.T.matrix, compute_uv=False)
        assert svals.max() == pytest.approx(svals.min(), rel=1e-12)
        assert svals.min() > 1.0

    def test_factor_range_validation(self):
        with pytest.raises(ConfigError):
            InstanceSpec(factor_lo=0.5, factor_hi=1.2)
        with pytest.raises(ConfigError):
            InstanceSpec(factor_lo=0.9, factor_hi=0.5)
        with pytest.raises(ConfigError):
            InstanceSpec(factor_lo=0.5, factor_hi=0.9, expansive=True)

    def test_mixed_family_is_deterministic(self):
        spec = InstanceSpec(scheme="quadruple", family="mixed", dim=2, seed=21)
        a = gen_instance(spec)
        b = gen_instance(spec)
        for name in "ABST":
            ma, mb = getattr(a.problem, name), getattr(b.problem, name)
            assert type(ma) is type(mb)


class TestRunSuite:
    def test_small_suite_all_pass(self):
        specs = [InstanceSpec(scheme="pair", dim=2, seed=i) for i in range(4)]
        specs += [InstanceSpec(scheme="quadruple", dim=2, seed=40 + i) for i in range(4)]
        specs += [InstanceSpec(scheme="self-quadruple", dim=1, seed=80 + i) for i in range(2)]
        verdict = run_suite(specs)
        agg = verdict.aggregates
        assert agg["instances"] == 10
        assert agg["converged"] == 10
        assert agg["conclusions_passed"] == 10
        assert agg["uniqueness_passed"] == 10
        assert agg["axiom_violations_total"] == 0

    def test_aggregates_match_rows(self):
        specs = [InstanceSpec(scheme="pair", dim=1, seed=i) for i in range(3)]
        verdict = run_suite(specs)
        agg = verdict.aggregates
        assert agg["instances"] == len(verdict.rows)
        assert agg["converged"] == sum(1 for r in verdict.rows if r.status == "converged")
        assert agg["conclusions_passed"] == sum(
            1 for r in verdict.rows if r.conclusions_passed
        )

    def test_expansive_instances_flagged(self):
        specs = [
            InstanceSpec(
                scheme="pair", dim=2, seed=i, factor_lo=1.1, factor_hi=1.9, expansive=True
            )
            for i in range(3)
        ]
        verdict = run_suite(specs)
        assert verdict.aggregates["diverging"] == 3
        assert all(r.status == "diverging" for r in verdict.rows)

    def test_verdict_serialization_reproducible(self):
        specs = [InstanceSpec(scheme="pair", dim=2, seed=i) for i in range(3)]
        a = json.dumps(run_suite(specs).to_jsonable(), sort_keys=True)
        b = json.dumps(run_suite(specs).to_jsonable(), sort_keys=True)
        assert a == b

    def test_empty_specs_rejected(self):
        with pytest.raises(UsageError):
            run_suite([])

    def test_rows_ordered_by_spec_index(self):
        specs = [InstanceSpec(scheme="pair", dim=1, seed=100 - i) for i in range(3)]
        verdict = run_suite(specs)
        assert [r.index for r in verdict.rows] == [0, 1, 2]
        assert [r.seed for r in verdict.rows] == [100, 99, 98]


def test_k_hat_nondecreasing_in_t_max():
    """Scaling the grid ceiling by 10x and 100x never lowers k_hat: induced
    nearness approaches 1 at large scales, the documented vacuity effect."""
    spec = InstanceSpec(scheme="pair", dim=2, seed=17)
    inst = gen_instance(spec)
    res = solve(inst.problem, inst.mu, inst.nu, inst.x0)
    pts = tuple(res.trace_x.points[:6]) + tuple(
        inst.mu.carrier.sample(__import__("fuzzyfp").SplitMix64(5), 4)
    )
    ks = []
    for t_max in (1e2, 1e3, 1e4):
        grid = TGrid.default().with_t_max(t_max)
        rep = estimate_k_pair(inst.problem, inst.mu, inst.nu, SampleSet(points_x=pts, grid=grid))
        ks.append(rep.k_hat)
        assert rep.grid.t_max == pytest.approx(t_max)
    assert ks[0] <= ks[1] <= ks[2]
