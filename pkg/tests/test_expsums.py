import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetabounds.expsums import (
    BlockScheme,
    PhaseFunction,
    VdCParams,
    block_scheme,
    exp_sum_exact,
    log_dirichlet_sum,
    shifted_diff_maxima,
    vdc_params_for_log_block,
    vdc_second_derivative_bound,
    vertex_max_bound,
    vertex_max_estimate,
    weight_sums,
    weyl_differencing_rhs,
)


class TestPhaseFunction:
    def test_log_phase_value_and_curvature(self):
        f = PhaseFunction.log_phase(100.0)
        assert f(10.0) == pytest.approx(-100.0 * math.log(10.0) / (2 * math.pi))
        assert f.second_derivative(10.0) == pytest.approx(100.0 / (2 * math.pi * 100.0))

    def test_quadratic(self):
        f = PhaseFunction.quadratic(0.5, 1.0, 2.0)
        assert f(3.0) == pytest.approx(0.5 * 9 + 3 + 2)
        assert f.second_derivative(123.0) == 1.0

    def test_custom_needs_callable(self):
        with pytest.raises(ValueError):
            PhaseFunction(kind="custom")
        with pytest.raises(ValueError):
            PhaseFunction(kind="nope")


class TestExpSumExact:
    def test_zero_phase(self):
        f = PhaseFunction.custom(lambda x: 0.0)
        assert exp_sum_exact(f, 0, 7) == pytest.approx(7.0 + 0.0j)

    def test_half_integer_phase_cancels(self):
        f = PhaseFunction.custom(lambda x: x / 2.0)
        for n_start in (0, 3, 10):
            assert abs(exp_sum_exact(f, n_start, 2)) < 1e-12

    def test_empty(self):
        f = PhaseFunction.log_phase(5.0)
        assert exp_sum_exact(f, 10, 0) == 0.0


class TestVdC:
    def test_worked_value(self):
        assert vdc_second_derivative_bound(VdCParams(L=100, V=50.0, W=100.0)) == pytest.approx(57.0)

    def test_floor_at_l_zero(self):
        b = vdc_second_derivative_bound(VdCParams(L=0, V=50.0, W=100.0))
        assert b >= 23.0 / 5.0

    def test_invariants(self):
        with pytest.raises(ValueError):
            VdCParams(L=10, V=2.0, W=1.0)  # W must exceed 1
        with pytest.raises(ValueError):
            VdCParams(L=10, V=5.0, W=4.0)  # V < W
        with pytest.raises(ValueError):
            VdCParams(L=-1, V=1.0, W=2.0)

    def test_envelope_on_random_log_blocks(self):
        rng = np.random.default_rng(42)
        min_slack = math.inf
        for _ in range(200):
            t = math.exp(rng.uniform(math.log(1e3), math.log(1e5)))
            n_start = int(t ** (2.0 / 3.0) * rng.uniform(1.0, 3.0))
            length = int(rng.integers(2, min(n_start, 5000) + 1))
            f = PhaseFunction.log_phase(t)
            value = abs(exp_sum_exact(f, n_start, length))
            bound = vdc_second_derivative_bound(vdc_params_for_log_block(t, n_start, length))
            min_slack = min(min_slack, bound - value)
            assert value <= bound
        assert min_slack > 0


class TestLogDirichletSum:
    def test_empty_range(self):
        assert log_dirichlet_sum(13.0, 1.0, 1.0) == 0.0

    def test_single_term(self):
        t = 17.0
        got = log_dirichlet_sum(t, 1.0, 2.0)
        expect = math.log(2.0) * 2.0 ** -0.5 * cmath.exp(-1j * t * math.log(2.0))
        assert got == pytest.approx(expect, abs=1e-15)

    def test_range_guard(self):
        with pytest.raises(ValueError):
            log_dirichlet_sum(10.0, 1.0, 2e8)

    def test_block_partition_additivity(self):
        t = 4321.5
        scheme = block_scheme(t, 2.0 / 3.0, 1.9, 1.0)
        whole = log_dirichlet_sum(t, t ** (2.0 / 3.0), float(math.floor(t)))
        parts = sum(
            log_dirichlet_sum(t, float(n0), float(n1))
            for (_, _, n0, n1) in scheme.blocks
        )
        assert abs(whole - parts) < 1e-10


class TestWeylDifferencing:
    def test_m1_empty_sum(self):
        assert weyl_differencing_rhs(10, 1, []) == pytest.approx(110.0)

    def test_worked_value(self):
        assert weyl_differencing_rhs(10, 2, [10.0]) == pytest.approx(120.0)

    def test_zero_phase_dominates_l_squared(self):
        f = PhaseFunction.custom(lambda x: 0.0)
        for L, M in ((5, 2), (13, 5), (40, 9)):
            dm = shifted_diff_maxima(f, 0, L, M)
            assert dm == [float(L)] * (M - 1)
            rhs = weyl_differencing_rhs(L, M, dm)
            assert rhs >= L * L

    def test_validation(self):
        with pytest.raises(ValueError):
            weyl_differencing_rhs(10, 0, [])
        with pytest.raises(ValueError):
            weyl_differencing_rhs(10, 3, [1.0])  # wrong length
        with pytest.raises(ValueError):
            weyl_differencing_rhs(10, 2, [-1.0])

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(min_value=1, max_value=60),
        st.integers(min_value=1, max_value=12),
        st.floats(min_value=1.0, max_value=5000.0),
        st.integers(min_value=1, max_value=200),
    )
    def test_envelope_property(self, L, M, t, n_start):
        f = PhaseFunction.log_phase(t)
        s2 = abs(exp_sum_exact(f, n_start, L)) ** 2
        dm = shifted_diff_maxima(f, n_start, L, M)
        rhs = weyl_differencing_rhs(L, M, dm)
        assert s2 <= rhs + 1e-9 * (1.0 + rhs)


class TestVertexMaxBound:
    def test_single_term(self):
        assert vertex_max_bound([0.7], [2.3]) == pytest.approx(0.7)

    def test_perfect_cancellation(self):
        assert vertex_max_bound([1.0, 1.0], [0.0, math.pi]) == pytest.approx(1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            vertex_max_bound([], [])
        with pytest.raises(ValueError):
            vertex_max_bound([2.0, 1.0], [0.0, 1.0])  # not ascending
        with pytest.raises(ValueError):
            vertex_max_bound([1.0], [0.0, 1.0])  # length mismatch
        with pytest.raises(ValueError):
            vertex_max_bound([0.5] * 21, [0.0] * 21)  # n > 20 exact path

    def test_dominates_direct_sum_randomized(self):
        rng = np.random.default_rng(2024)
        for _ in range(3000):
            n = int(rng.integers(1, 9))
            amps = np.sort(rng.uniform(0.05, 3.0, size=n))
            phases = rng.uniform(0.0, 2 * math.pi, size=n)
            direct = abs(complex(np.sum(amps * np.exp(1j * phases))))
            bound = vertex_max_bound(list(amps), list(phases))
            assert direct <= bound + 1e-12

    @settings(max_examples=150, deadline=None)
    @given(
        st.lists(st.floats(min_value=0.01, max_value=10.0), min_size=1, max_size=8),
        st.data(),
    )
    def test_dominance_property(self, amps, data):
        amps = sorted(amps)
        phases = [
            data.draw(st.floats(min_value=0.0, max_value=2 * math.pi))
            for _ in amps
        ]
        direct = abs(sum(a * cmath.exp(1j * x) for a, x in zip(amps, phases)))
        assert direct <= vertex_max_bound(amps, phases) + 1e-9

    def test_sampled_estimator_below_exact(self):
        rng = np.random.default_rng(5)
        amps = np.sort(rng.uniform(0.1, 2.0, size=12))
        phases = rng.uniform(0.0, 2 * math.pi, size=12)
        exact = vertex_max_bound(list(amps), list(phases))
        est = vertex_max_estimate(list(amps), list(phases), samples=4000, seed=1)
        assert est <= exact + 1e-12


class TestWeightSums:
    def test_m1_all_zero(self):
        ws = weight_sums(1)
        assert ws.exact == (0.0, 0.0, 0.0, 0.0)
        assert all(e <= b for e, b in zip(ws.exact, ws.bound))

    def test_m3_worked_values(self):
        ws = weight_sums(3)
        assert ws.exact[2] == pytest.approx(4.0 / 3.0)
        assert ws.bound[2] == pytest.approx(1.5)
        assert ws.exact[3] == pytest.approx(1.0)
        assert ws.bound[3] == pytest.approx(1.5)

    def test_closed_forms_and_bounds_sweep(self):
        for m_val in list(range(1, 400)) + [1000, 5000, 10000]:
            ws = weight_sums(m_val)
            assert ws.exact[2] == pytest.approx((m_val**2 - 1) / 6.0, rel=1e-12)
            assert ws.exact[3] == pytest.approx((m_val - 1) / 2.0, rel=1e-12)
            for e, b in zip(ws.exact, ws.bound):
                assert e <= b * (1 + 1e-12)

    def test_bounds_asymptotically_tight(self):
        ws = weight_sums(10**4)
        ratios = [e / b for e, b in zip(ws.exact, ws.bound)]
        assert ratios[0] > 0.999
        assert ratios[1] > 0.985  # m^{-1/2} sum converges like 1 - c/sqrt(M)
        assert ratios[2] > 0.999
        assert ratios[3] > 0.999
        smaller = [e / b for e, b in zip(weight_sums(100).exact, weight_sums(100).bound)]
        assert all(r_big >= r_small for r_big, r_small in zip(ratios, smaller))


class TestBlockScheme:
    def test_worked_example(self):
        scheme = block_scheme(math.exp(6.0), 1.0 / 3.0, 2.0, 2.0 / 3.0)
        assert scheme.blocks[0][0] == pytest.approx(math.exp(2.0))
        assert scheme.J <= scheme.count_limit() == 3

    def test_partition_property(self):
        for t, ratio in ((12345.6, 1.7), (999.0, 1.1), (4.06e5, 3.0)):
            scheme = block_scheme(t, 2.0 / 3.0, ratio, 1.0)
            covered = []
            for (_, _, n0, n1) in scheme.blocks:
                covered.extend(range(n0 + 1, n1 + 1))
            lo = math.floor(t ** (2.0 / 3.0)) + 1
            hi = math.floor(t)
            assert covered == list(range(lo, hi + 1))

    def test_huge_ratio_single_block(self):
        scheme = block_scheme(1000.0, 2.0 / 3.0, 1000.0, 1.0)
        assert scheme.J == 1

    def test_invariants_hold(self):
        scheme = block_scheme(5e4, 1.0 / 3.0, 1.35, 2.0 / 3.0)
        t = scheme.t
        assert scheme.J <= scheme.count_limit()
        for (x0, x1, n0, n1) in scheme.blocks:
            assert n0 == math.floor(x0) or x1 == t ** (2.0 / 3.0)
            assert x0 < x1
            assert n0 <= n1

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            block_scheme(5.0, 1.0 / 3.0, 2.0, 2.0 / 3.0)  # t^alpha < 2
        with pytest.raises(ValueError):
            block_scheme(100.0, 2.0 / 3.0, 1.0, 1.0)  # ratio must exceed 1
        with pytest.raises(ValueError):
            block_scheme(100.0, 0.5, 2.0, 1.0)  # alpha not in the allowed set
