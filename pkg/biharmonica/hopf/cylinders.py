"""Hopf cylinders: preimages of plane curves under pi(x, y, z) = (x, y).

The base of BCV(m, l) is the conformal plane h = (dx^2 + dy^2) / F^2 of
curvature 4m. A cylinder over a curve of geodesic curvature kappa has
H = kappa / 2, fiber torsion -l / 2 and |A|^2 = kappa^2 + l^2 / 2, and it is
proper biharmonic exactly when 4m - l^2 > 0 and kappa^2 = 4m - l^2.
"""
import math
from collections import namedtuple

import numpy as np

from biharmonica.exceptions import CurveError
from biharmonica.geometry import BCV, covariant_derivative_at, jets, make_model, tensors
from biharmonica.geometry.models import TangentVector
from biharmonica.hopf.curves import base_factor, base_metric, check_base_point, circle
from biharmonica.surface import SurfacePatch, unit_normal

# Default step of the central differences used for non-jet curvature functions.
CURVE_FD_STEP = 1e-4


class HopfInvariants(namedtuple('HopfInvariants', 'kappa_g tau_g mean_curvature norm_a_squared radius')):
    __slots__ = ()


class Properness(namedtuple('Properness', (
    'mean_curvature_condition norm_condition base_positive proper'
))):
    """H^2 - (4m - l^2) / 4 and |A|^2 - (4m - l^2 / 2), with the verdict on both."""
    __slots__ = ()


def base_geodesic_curvature(m, curve, s):
    """Signed geodesic curvature against the right-hand normal (y', -x')."""
    p, d1, d2 = curve.jet(s)
    check_base_point(m, *p)
    g, dg, _ = tensors.metric_jet(base_metric(m), tuple(p))
    speed2 = d1 @ g @ d1
    if speed2 <= 0.0:
        raise CurveError('{} has zero speed at {:g}'.format(curve.name, s))
    acceleration = d2 + np.einsum('kij,i,j->k', tensors.christoffel_symbols(g, dg), d1, d1)
    normal = np.array([d1[1], -d1[0]])
    return float(acceleration @ g @ normal) / speed2 ** 1.5


def critical_curvature(m, l):
    """sqrt(4m - l^2), the geodesic curvature of the biharmonic base circle."""
    window = 4.0 * m - l * l
    if window < 0:
        raise CurveError('4m - l^2 = {:g} < 0 admits no biharmonic base circle'.format(window))
    return math.sqrt(window)


def circle_for_kg(m, kappa):
    """Chart radius rho > 0 of the origin-centred circle with (1 - m rho^2) / rho = kappa."""
    if not m > 0:
        raise CurveError('circle_for_kg needs m > 0, got {:g}'.format(m))
    if kappa < 0:
        raise CurveError('target geodesic curvature must be nonnegative, got {:g}'.format(kappa))
    # root of m rho^2 + kappa rho - 1 written without cancellation
    return 2.0 / (kappa + math.sqrt(kappa * kappa + 4.0 * m))


def lift_cylinder(m, l, curve, height=1.0):
    """r(s, t) = (x(s), y(s), t) in BCV(m, l)."""
    model = make_model(BCV, m=m, l=l)
    for s in curve.sample():
        check_base_point(m, *curve(s))

    def immersion(s, t):
        x, y = curve.point(s)
        return (x, y, t)

    return SurfacePatch(
        model, immersion, curve.interval, (-height, height), name='Hopf cylinder over {}'.format(curve.name),
    )


def hopf_cylinder(m, l, kappa=None, radius_scale=1.0, height=1.0):
    """The cylinder over the circle of geodesic curvature ``kappa``.

    ``kappa`` defaults to the critical value sqrt(4m - l^2); ``radius_scale``
    perturbs the chart radius of the base circle.
    """
    if kappa is None:
        kappa = critical_curvature(m, l)
    return lift_cylinder(m, l, circle(m, radius_scale * circle_for_kg(m, kappa)), height)


def horizontal_lift(model, curve, s):
    """The g-unit horizontal lift of the curve velocity at (x(s), y(s), 0)."""
    p, d1, _ = curve.jet(s)
    point = model.check_point((p[0], p[1], 0.0))
    F = base_factor(model.m, *p)
    E = model.frame_at(point)
    lift = TangentVector(point, (d1[0] / F) * E[0] + (d1[1] / F) * E[1])
    norm = lift.norm(model)
    if norm == 0.0:
        raise CurveError('{} has zero speed at {:g}'.format(curve.name, s))
    return lift * (1.0 / norm)


def fiber_torsion(m, l, curve, s):
    """tau_g = -g(nabla_X E_3, xi) along the cylinder over ``curve``."""
    patch = lift_cylinder(m, l, curve)
    model = patch.model
    X = horizontal_lift(model, curve, s)
    xi = unit_normal(patch, (s, 0.0))
    nabla = covariant_derivative_at(model, X.base, model.frame_field(3), X)
    return -nabla.inner(model, xi)


def hopf_invariants(m, l, kappa, radius=True):
    if kappa < 0:
        raise CurveError('geodesic curvature must be nonnegative, got {:g}'.format(kappa))
    tau = -0.5 * l
    R = None
    if radius:
        if not m > 0:
            raise CurveError('the extrinsic radius needs m > 0, got {:g}'.format(m))
        R = 1.0 / math.sqrt(kappa * kappa + 4.0 * m)
    return HopfInvariants(
        kappa_g=kappa,
        tau_g=tau,
        mean_curvature=0.5 * kappa,
        norm_a_squared=kappa * kappa + 2.0 * tau * tau,
        radius=R,
    )


def _kappa_derivatives(kappa, s, step):
    try:
        (t,) = jets.seed((float(s),))
        value = kappa(t)
    except TypeError:
        value = None
    if isinstance(value, jets.Jet):
        return value.value, value.grad[0], value.hess[0, 0]
    k0 = float(kappa(s))
    kp, km = float(kappa(s + step)), float(kappa(s - step))
    return k0, (kp - km) / (2.0 * step), (kp - 2.0 * k0 + km) / (step * step)


def curve_ode_residual(kappa, m, l, s, step=CURVE_FD_STEP):
    """(kappa'' - kappa^3 + (4m - l^2) kappa, 3 kappa kappa', -(l / 2) kappa').

    A number ``kappa`` is a constant curvature and is evaluated in closed form;
    a callable is differentiated with jets, or by central differences when it
    does not accept jets.
    """
    if callable(kappa):
        k, dk, ddk = _kappa_derivatives(kappa, s, step)
    else:
        k, dk, ddk = float(kappa), 0.0, 0.0
    return (
        ddk + k * (4.0 * m - l * l - k * k),
        3.0 * k * dk,
        -0.5 * l * dk,
    )


def base_sectional_curvature(m, point):
    """Gaussian curvature of h at ``point``; 4m everywhere."""
    x, y = point
    check_base_point(m, x, y)
    g, dg, ddg = tensors.metric_jet(base_metric(m), (float(x), float(y)))
    ginv = np.linalg.inv(g)
    gamma = tensors.christoffel_symbols(g, dg, ginv)
    dgamma = tensors.christoffel_derivatives(g, dg, ddg, ginv)
    R = tensors.lowered_riemann(tensors.riemann_operator(gamma, dgamma), g)
    return float(R[0, 1, 0, 1] / np.linalg.det(g))


def properness_conditions(m, l, kappa, tol=1e-9):
    invariants = hopf_invariants(m, l, kappa, radius=False)
    window = 4.0 * m - l * l
    mean_condition = invariants.mean_curvature ** 2 - 0.25 * window
    norm_condition = invariants.norm_a_squared - (4.0 * m - 0.5 * l * l)
    base_positive = window > 0
    proper = (
        base_positive and kappa > 0 and
        abs(mean_condition) <= tol and abs(norm_condition) <= tol
    )
    return Properness(mean_condition, norm_condition, base_positive, proper)
