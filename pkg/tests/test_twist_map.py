import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matherbeta.twist_map import (
    MapSpec,
    PhasePoint,
    apply,
    apply_xy,
    generating_h,
    h_symmetry_defects,
    orbit,
    partial_derivatives_h,
    rotation_number_estimate,
)


class TestApply:
    def test_integrable(self, integrable_map):
        out = apply(integrable_map, PhasePoint(0.3, 0.25))
        assert (out.x, out.y) == pytest.approx((0.55, 0.25))

    def test_standard_at_zero_phase(self):
        m = MapSpec.standard(0.1)
        out = apply(m, PhasePoint(0.0, 0.5))
        assert (out.x, out.y) == pytest.approx((0.5, 0.5))

    def test_standard_at_quarter(self):
        # g(1/4) = eps sin(pi/2) = eps
        m = MapSpec.standard(0.1)
        out = apply(m, PhasePoint(0.25, 0.0))
        assert (out.x, out.y) == pytest.approx((0.35, 0.1))

    @given(x=st.floats(-3, 3), y=st.floats(-2, 2))
    @settings(max_examples=60, deadline=None)
    def test_lift_equivariance(self, x, y):
        m = MapSpec.standard(0.2)
        a = apply(m, PhasePoint(x + 1.0, y))
        b = apply(m, PhasePoint(x, y))
        assert a.x - b.x == pytest.approx(1.0, abs=1e-12)
        assert a.y == pytest.approx(b.y, abs=1e-13)

    def test_area_preservation_finite_differences(self, rng):
        # Jacobian determinant via finite differences equals 1
        m = MapSpec.standard(0.3)
        h = 1e-6
        for _ in range(40):
            x, y = rng.uniform(0, 1), rng.uniform(-1, 1)
            fx1, fy1 = apply_xy(m, [x + h, x - h], [y, y])
            fx2, fy2 = apply_xy(m, [x, x], [y + h, y - h])
            J = np.array([
                [(fx1[0] - fx1[1]) / (2 * h), (fx2[0] - fx2[1]) / (2 * h)],
                [(fy1[0] - fy1[1]) / (2 * h), (fy2[0] - fy2[1]) / (2 * h)],
            ])
            assert abs(np.linalg.det(J) - 1.0) <= 1e-9
        # analytic determinant of [[1+g', 1], [g', 1]] is identically 1
        gp = m.g_prime().evaluate_real(rng.uniform(0, 1, size=100))
        det = (1.0 + gp) * 1.0 - gp * 1.0
        assert np.max(np.abs(det - 1.0)) <= 1e-12


class TestGeneratingFunction:
    def test_pure_quadratic(self, integrable_map):
        assert generating_h(integrable_map, 0.0, 0.7) == pytest.approx(0.245)

    def test_standard_at_origin(self):
        eps = 0.1
        m = MapSpec.standard(eps)
        assert generating_h(m, 0.0, 0.0) == pytest.approx(-eps / (2 * math.pi))

    def test_standard_quarter_points(self):
        # G(1/4) = -(eps / 2 pi) cos(pi/2) = 0
        m = MapSpec.standard(0.1)
        assert generating_h(m, 0.25, 0.75) == pytest.approx(0.125, abs=1e-15)

    def test_partial_derivatives_reconstruct_map(self, rng):
        m = MapSpec.standard(0.1)
        for _ in range(50):
            x0, y0 = rng.uniform(0, 1), rng.uniform(-1, 1)
            pt = apply(m, PhasePoint(x0, y0))
            d1, d2 = partial_derivatives_h(m, x0, pt.x)
            assert -d1 == pytest.approx(y0, abs=1e-12)
            assert d2 == pytest.approx(pt.y, abs=1e-12)

    def test_twist_condition(self, rng):
        # d^2 h / dx0 dx1 = -1 for this family (finite-difference check)
        m = MapSpec.standard(0.4)
        h = 1e-5
        x0, x1 = rng.uniform(0, 1, size=2)
        cross = (
            generating_h(m, x0 + h, x1 + h) - generating_h(m, x0 + h, x1 - h)
            - generating_h(m, x0 - h, x1 + h) + generating_h(m, x0 - h, x1 - h)
        ) / (4 * h * h)
        assert cross == pytest.approx(-1.0, abs=1e-6)

    def test_criticality_identity(self, rng):
        # d2 h(a,b) + d1 h(b,c) = -(c - 2b + a) + g(b)
        m = MapSpec.standard(0.2)
        a, b, c = rng.uniform(-1, 2, size=3)
        lhs = partial_derivatives_h(m, a, b)[1] + partial_derivatives_h(m, b, c)[0]
        rhs = -(c - 2 * b + a) + float(m.g.evaluate_real(b))
        assert lhs == pytest.approx(rhs, abs=1e-13)


class TestSymmetryDefects:
    def test_integrable_trivial(self, integrable_map):
        d1, d2 = h_symmetry_defects(integrable_map, 0.37, -1.2, 0)
        assert abs(d1) <= 1e-12 and abs(d2) <= 1e-12

    def test_standard_specific(self):
        m = MapSpec.standard(0.3)
        d1, d2 = h_symmetry_defects(m, 0.1, 0.6, 2)
        assert abs(d1) <= 1e-12 and abs(d2) <= 1e-12

    @given(
        x=st.floats(-5, 5), xp=st.floats(-5, 5), mi=st.integers(-4, 4),
        eps=st.floats(0.0, 0.5),
    )
    @settings(max_examples=250, deadline=None)
    def test_randomized_sweep(self, x, xp, mi, eps):
        m = MapSpec.standard(eps) if eps > 0 else MapSpec.integrable()
        d1, d2 = h_symmetry_defects(m, x, xp, mi)
        assert abs(d1) <= 1e-12 and abs(d2) <= 1e-12


class TestOrbits:
    def test_integrable_rotation(self, integrable_map):
        orb = orbit(integrable_map, PhasePoint(0.0, 0.37), 10_000)
        est = rotation_number_estimate(orb)
        assert est.value == pytest.approx(0.37, abs=1e-12)

    def test_fixed_point(self):
        m = MapSpec.standard(0.2)
        orb = orbit(m, PhasePoint(0.0, 0.0), 100)
        est = rotation_number_estimate(orb)
        assert est.value == 0.0
        assert np.max(np.abs(orb)) == 0.0

    def test_rotation_on_solved_curve(self, standard_005, solver_cfg, golden):
        # orbit launched on the invariant curve has rotation number omega
        from matherbeta.conjugacy import solve_conjugacy

        sol = solve_conjugacy(standard_005, golden, solver_cfg)
        p0 = PhasePoint(float(sol.u.evaluate_real(0.0)),
                        golden + float(sol.v.evaluate_real(0.0)))
        orb = orbit(standard_005, p0, 100_000)
        est = rotation_number_estimate(orb)
        assert est.value == pytest.approx(golden, abs=1e-6)

    def test_frequency_recovery_from_parametrization(self, standard_005,
                                                     solver_cfg, golden):
        # x_j = U(j omega) = j omega + u(j omega) recovers omega to 1e-8
        from matherbeta.conjugacy import solve_conjugacy

        sol = solve_conjugacy(standard_005, golden, solver_cfg)
        n = 2 ** 22
        j = np.arange(n + 1)
        xs = j * golden + sol.u.evaluate_real((j * golden) % 1.0)
        est = rotation_number_estimate(xs)
        assert est.value == pytest.approx(golden, abs=1e-8)

    def test_error_indicator(self, integrable_map):
        orb = orbit(integrable_map, PhasePoint(0.0, 0.5), 1000)
        est = rotation_number_estimate(orb)
        assert est.error_indicator <= 1e-12


class TestMapSpec:
    def test_norm_report(self):
        m = MapSpec.standard(0.1)
        # sum |g_k| e^{2 pi |k| R1} with two modes of size eps/2 at R1 = 0.5
        expected = 2 * 0.05 * math.exp(2 * math.pi * 0.5)
        assert m.norm_R1 == pytest.approx(expected)

    def test_primitive_consistency(self):
        m = MapSpec.two_mode(0.1, 0.03)
        diff = m.G.derivative() - m.g
        assert diff.l1_norm() <= 1e-13

    def test_scaled(self):
        m = MapSpec.standard(0.1).scaled(0.5)
        assert m.eps_scale == pytest.approx(0.05)
        assert float(m.g.evaluate_real(0.25)) == pytest.approx(0.05)

    def test_requires_zero_mean(self):
        from matherbeta.errors import NonZeroMean
        from matherbeta.fourier import FourierSeries
        bad = FourierSeries.from_sin_cos([0.5], [0.0, 1.0])
        with pytest.raises((ValueError, NonZeroMean)):
            MapSpec.from_profile(bad)

    def test_from_coefficients(self):
        m = MapSpec.from_coefficients([0.0, 0.1], [0.0, 0.0, 0.2])
        x = 0.2
        expected = 0.1 * math.cos(2 * math.pi * x) + 0.2 * math.sin(4 * math.pi * x)
        assert float(m.g.evaluate_real(x)) == pytest.approx(expected)
