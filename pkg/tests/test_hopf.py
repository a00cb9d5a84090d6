import math

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from biharmonica.biharmonic import MINIMAL, verdict
from biharmonica.exceptions import CurveError, InvalidPointError
from biharmonica.geometry import jets, make_model
from biharmonica.hopf import (
    PlaneCurve,
    base_factor,
    base_geodesic_curvature,
    base_sectional_curvature,
    circle,
    circle_for_kg,
    critical_curvature,
    curve_ode_residual,
    fiber_torsion,
    hopf_cylinder,
    hopf_invariants,
    horizontal_lift,
    lift_cylinder,
    line,
    properness_conditions,
    reparametrize_by_arclength,
)
from biharmonica.surface import first_fundamental_form, shape_report, unit_normal


def counter_clockwise(radius, rate=1.0):
    return PlaneCurve(
        lambda s: (radius * jets.cos(rate * s * s), radius * jets.sin(rate * s * s)),
        (0.5, 2.0),
        name='ccw',
    )


class TestBaseCurves:
    @pytest.mark.parametrize('m, radius, kappa', [
        (0.0, 1.0, 1.0),
        (1.0, 0.5, 1.5),
        (-0.5, 0.5, 2.25),
        (0.25, 2.0, 0.0),
    ])
    def test_circle_curvature(self, m, radius, kappa):
        curve = circle(m, radius)
        for s in curve.sample():
            assert base_geodesic_curvature(m, curve, s) == pytest.approx(kappa, abs=1e-12)
            assert curve.speed(m, s) == pytest.approx(1.0)

    def test_orientation_sets_the_sign(self):
        assert base_geodesic_curvature(1.0, counter_clockwise(0.5), 1.0) == pytest.approx(-1.5)

    @pytest.mark.parametrize('m', [-1.0, 0.0, 1.0])
    def test_lines_are_geodesics(self, m):
        curve = line(m, angle=0.7)
        for s in curve.sample():
            assert base_geodesic_curvature(m, curve, s) == pytest.approx(0.0, abs=1e-12)
            assert curve.speed(m, s) == pytest.approx(1.0)

    def test_circle_for_kg(self):
        for m, kappa in [(1.0, math.sqrt(3.0)), (0.25, 1.0), (2.0, 0.0), (1.0, 10.0)]:
            rho = circle_for_kg(m, kappa)
            assert (1.0 - m * rho * rho) / rho == pytest.approx(kappa, abs=1e-12)
        assert circle_for_kg(0.25, 1.0) == pytest.approx(2.0 / (1.0 + math.sqrt(2.0)))

    @pytest.mark.parametrize('m, kappa', [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5)])
    def test_circle_for_kg_errors(self, m, kappa):
        with pytest.raises(CurveError):
            circle_for_kg(m, kappa)

    def test_critical_curvature(self):
        assert critical_curvature(1.0, 1.0) == pytest.approx(math.sqrt(3.0))
        assert critical_curvature(1.0, 2.0) == 0.0
        with pytest.raises(CurveError):
            critical_curvature(1.0, 3.0)

    def test_curve_errors(self):
        with pytest.raises(CurveError):
            circle(1.0, 0.0)
        with pytest.raises(InvalidPointError):
            circle(-1.0, 1.0)
        with pytest.raises(CurveError):
            PlaneCurve(lambda s: (s, s), (1.0, 0.0))

    @given(
        st.floats(min_value=-1.0, max_value=1.0),
        st.floats(min_value=-0.5, max_value=0.5),
        st.floats(min_value=-0.5, max_value=0.5),
    )
    @hsettings(max_examples=50, deadline=None)
    def test_base_curvature_is_constant(self, m, x, y):
        assert base_sectional_curvature(m, (x, y)) == pytest.approx(4.0 * m, abs=1e-9)


class TestArclength:
    def test_reparametrized_curve_has_unit_speed(self):
        curve = reparametrize_by_arclength(1.0, counter_clockwise(0.5))
        # h-speed of the original is 0.4 * 2 sigma
        assert curve.interval[1] == pytest.approx(0.4 * (4.0 - 0.25), rel=1e-8)
        for s in (0.1, 0.7, 1.3):
            assert curve.speed(1.0, s) == pytest.approx(1.0, abs=1e-8)
        np.testing.assert_allclose(curve(0.0), counter_clockwise(0.5)(0.5))

    def test_curvature_survives_reparametrization(self):
        curve = reparametrize_by_arclength(1.0, counter_clockwise(0.5))
        assert base_geodesic_curvature(1.0, curve, 0.9) == pytest.approx(-1.5, abs=1e-7)

    def test_zero_length(self):
        with pytest.raises(CurveError):
            reparametrize_by_arclength(1.0, PlaneCurve(lambda s: (0.1, 0.2), (0.0, 1.0)))


class TestCylinders:
    def test_first_form_cross_term(self):
        rho = math.sqrt(2.0) - 1.0
        patch = lift_cylinder(1.0, 2.0, circle(1.0, rho))
        first = first_fundamental_form(patch, (0.0, 0.0))
        assert first[0, 1] == pytest.approx(rho)
        assert first[1, 1] == pytest.approx(1.0)
        assert first[0, 0] == pytest.approx(1.0 + rho * rho)

    @pytest.mark.parametrize('m, l', [(1.0, 0.0), (1.0, 1.0), (0.25, 0.0), (1.0, math.sqrt(2.0))])
    def test_shape_matches_closed_form(self, m, l):
        patch = hopf_cylinder(m, l)
        expected = hopf_invariants(m, l, critical_curvature(m, l))
        report = shape_report(patch, patch.midpoint())
        assert abs(report.mean_curvature) == pytest.approx(expected.mean_curvature, abs=1e-10)
        assert report.norm_a_squared == pytest.approx(expected.norm_a_squared, abs=1e-10)

    def test_flat_line_lifts_to_a_plane(self):
        patch = lift_cylinder(0.0, 0.0, line(0.0, angle=0.7))
        for uv in [(0.0, 0.0), (0.3, -0.4), (-0.2, 0.5)]:
            report = shape_report(patch, uv)
            assert report.mean_curvature == pytest.approx(0.0, abs=1e-12)
            assert report.norm_a_squared == pytest.approx(0.0, abs=1e-12)
            np.testing.assert_allclose(np.abs(unit_normal(patch, uv).components), [math.sin(0.7), math.cos(0.7), 0.0])
        assert verdict(patch, grid=(3, 3)).classification == MINIMAL

    @pytest.mark.parametrize('m, l, curve', [
        (1.0, 1.0, circle(1.0, 0.4)),
        (0.25, 0.0, circle(0.25, 1.0)),
        (1.0, 2.0, line(1.0, angle=0.3)),
    ], ids=['circle-m1-l1', 'circle-m0.25', 'line-m1-l2'])
    def test_normal_is_the_rotated_horizontal_velocity(self, m, l, curve):
        patch = lift_cylinder(m, l, curve)
        model = patch.model
        for s in np.linspace(*curve.interval, 5)[1:-1]:
            p, d1, _ = curve.jet(s)
            F = base_factor(m, *p)
            xi = unit_normal(patch, (s, 0.2))
            E = model.frame_at(xi.base)
            expected = (d1[1] / F) * E[0] - (d1[0] / F) * E[1]
            sign = np.sign(xi.components @ model.metric_at(xi.base) @ expected)
            np.testing.assert_allclose(xi.components, sign * expected, atol=1e-10)

    @pytest.mark.parametrize('l', [0.0, 1.0, -2.0])
    def test_fiber_torsion(self, l):
        curve = circle(0.5, 0.8)
        for s in (0.0, 1.0):
            assert fiber_torsion(0.5, l, curve, s) == pytest.approx(-0.5 * l, abs=1e-10)

    def test_horizontal_lift(self):
        model = make_model('bcv', m=1.0, l=1.0)
        curve = circle(1.0, 0.4)
        lift = horizontal_lift(model, curve, 0.3)
        assert lift.norm(model) == pytest.approx(1.0)
        E3 = model.frame_at(lift.base)[2]
        assert lift.components @ model.metric_at(lift.base) @ E3 == pytest.approx(0.0, abs=1e-12)

    def test_invariants(self):
        inv = hopf_invariants(1.0, 1.0, math.sqrt(3.0))
        assert inv.tau_g == -0.5
        assert inv.mean_curvature == pytest.approx(math.sqrt(3.0) / 2.0)
        assert inv.norm_a_squared == pytest.approx(3.5)
        assert inv.radius == pytest.approx(1.0 / math.sqrt(7.0))
        assert hopf_invariants(0.0, 1.0, 0.5, radius=False).radius is None
        with pytest.raises(CurveError):
            hopf_invariants(0.0, 1.0, 0.5)
        with pytest.raises(CurveError):
            hopf_invariants(1.0, 1.0, -1.0)

    @pytest.mark.parametrize('m, l, kappa, proper', [
        (1.0, 1.0, math.sqrt(3.0), True),
        (0.25, 0.0, 1.0, True),
        (1.0, 1.0, 1.0, False),
        (1.0, 2.0, 0.0, False),
        (0.0, 1.0, 0.5, False),
    ])
    def test_properness(self, m, l, kappa, proper):
        assert properness_conditions(m, l, kappa).proper is proper

    def test_properness_conditions_vanish_together(self):
        result = properness_conditions(1.0, math.sqrt(2.0), math.sqrt(2.0))
        assert result.mean_curvature_condition == pytest.approx(0.0, abs=1e-12)
        assert result.norm_condition == pytest.approx(0.0, abs=1e-12)
        assert result.base_positive


class TestCurveODE:
    @pytest.mark.parametrize('m, l', [(1.0, 0.0), (1.0, 1.0), (0.25, 0.0), (1.0, math.sqrt(2.0))])
    def test_critical_constant_curvature(self, m, l):
        residual = curve_ode_residual(critical_curvature(m, l), m, l, 0.3)
        assert residual[0] == pytest.approx(0.0, abs=1e-12)
        assert residual[1:] == (0.0, -0.0)

    def test_zero_curvature(self):
        assert curve_ode_residual(0.0, 1.0, 1.0, 0.0) == (0.0, 0.0, -0.0)

    def test_linear_curvature_with_jets(self):
        assert curve_ode_residual(lambda s: s, 1.0, 0.0, 1.0) == (3.0, 3.0, -0.0)

    def test_curvature_by_finite_differences(self):
        s, m, l = 0.5, 1.0, 1.0
        k, dk = math.sin(s), math.cos(s)
        residual = curve_ode_residual(math.sin, m, l, s)
        expected = (-k + k * (4.0 * m - l * l - k * k), 3.0 * k * dk, -0.5 * l * dk)
        np.testing.assert_allclose(residual, expected, atol=1e-6)

    def test_off_critical_constant(self):
        assert abs(curve_ode_residual(1.0, 1.0, 1.0, 0.0)[0]) >= 1e-2
