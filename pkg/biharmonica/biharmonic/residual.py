"""The biharmonic equations of a surface in a Riemannian 3-manifold.

With unit normal xi, shape operator A and H = trace(A) / 2, the surface is
biharmonic iff

    Delta H - H |A|^2 + H Ric(xi, xi) = 0
    2 A(grad H) + grad H^2 - 2 H (Ric xi)^T = 0

``residual_full`` evaluates both left-hand sides; ``residual_cmc`` is the
reduced system for constant H, and the triples ``chn`` / ``csl`` are the
reduced conditions written in the orthonormal frames of BCV and Sol.
"""
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np

from biharmonica.exceptions import AmbientMismatchError, NotCMCError
from biharmonica.geometry import BCV, SOL, SPACE_FORM, curvature_at
from biharmonica.settings import settings
from biharmonica.surface import adapted_frame, mean_curvature_field, shape_report
from biharmonica.surface.calculus import (
    make_stencil,
    parameter_gradient,
    resolve_step,
    stencil_gradient,
    stencil_laplacian,
)
from biharmonica.util import interior_linspace


class BiharmonicResidual(namedtuple('BiharmonicResidual', (
    'normal_residual tangential_residual mean_curvature gradient_norm chn_triple csl_triple'
))):
    __slots__ = ()

    @property
    def max_residual(self):
        return max(abs(self.normal_residual), self.tangential_residual)


class RicciIdentity(namedtuple('RicciIdentity', 'normal_difference tangential_difference')):
    __slots__ = ()


def resolve_tolerance(tol):
    # In case the setting value changes.
    return float(settings.TOL) if tol is None else tol


def _normal_ricci(data, report):
    """Ric(xi, xi) and the parameter components of (Ric xi)^T."""
    xi = report.normal.components
    ricci = data.ricci_tensor @ xi
    # g(r_a, Ric xi) = r_a . (Ric_ij xi^j)
    tangential = np.linalg.solve(report.first_form, report.jet.tangents @ ricci)
    return float(xi @ ricci), tangential


def _i_norm(report, coefficients):
    return math.sqrt(max(coefficients @ report.first_form @ coefficients, 0.0))


def _reduced_triples(patch, uv, report):
    kind = patch.model.kind
    if kind == BCV:
        return chn_residual(patch.model, patch, uv, report=report), None
    if kind == SOL:
        return None, csl_residual(patch.model, patch, uv, report=report)
    return None, None


def residual_full(patch, uv, step=None, extrapolate=True):
    report = shape_report(patch, uv)
    H = report.mean_curvature
    stencil = make_stencil(patch, mean_curvature_field(patch), uv, step, extrapolate, reach=2)
    stencil.prime(0, 0, H)
    dH = stencil_gradient(stencil, extrapolate)
    laplacian = stencil_laplacian(patch, stencil, extrapolate)

    data = curvature_at(patch.model, report.point)
    ricci_normal, ricci_tangential = _normal_ricci(data, report)
    grad = np.linalg.solve(report.first_form, dH)

    normal = laplacian - H * report.norm_a_squared + H * ricci_normal
    tangential = 2.0 * report.shape_operator @ grad + 2.0 * H * grad - 2.0 * H * ricci_tangential
    chn, csl = _reduced_triples(patch, uv, report)
    return BiharmonicResidual(
        normal_residual=float(normal),
        tangential_residual=_i_norm(report, tangential),
        mean_curvature=H,
        gradient_norm=_i_norm(report, grad),
        chn_triple=chn,
        csl_triple=csl,
    )


def cmc_defect(patch, step=None):
    """max ||grad H|| over a 3x3 grid of the patch interior."""
    return _cmc_defect(patch, resolve_step(step))


@lru_cache(maxsize=256)
def _cmc_defect(patch, step):
    worst = 0.0
    field = mean_curvature_field(patch)
    for uv in interior_grid(patch, (3, 3), step):
        dH = parameter_gradient(patch, field, uv, step)
        report = shape_report(patch, uv)
        worst = max(worst, _i_norm(report, np.linalg.solve(report.first_form, dH)))
    return worst


def residual_cmc(patch, uv, tol=None, step=None):
    tol = resolve_tolerance(tol)
    defect = cmc_defect(patch, step)
    if defect > tol:
        raise NotCMCError('{} is not CMC: max |grad H| = {:.3e} > {:g}'.format(patch.name, defect, tol))

    report = shape_report(patch, uv)
    H = report.mean_curvature
    ricci_normal, ricci_tangential = _normal_ricci(curvature_at(patch.model, report.point), report)
    chn, csl = _reduced_triples(patch, uv, report)
    return BiharmonicResidual(
        normal_residual=H * (ricci_normal - report.norm_a_squared),
        tangential_residual=_i_norm(report, 2.0 * H * ricci_tangential),
        mean_curvature=H,
        gradient_norm=0.0,
        chn_triple=chn,
        csl_triple=csl,
    )


def _check_ambient(model, patch, kind):
    if model.kind != kind:
        raise AmbientMismatchError('expected a {} ambient, got {!r}'.format(kind, model))
    if patch.model != model:
        raise AmbientMismatchError('{} lives in {!r}, not {!r}'.format(patch.name, patch.model, model))


def _normal_coefficients(patch, uv, report):
    """(c^3, a_1^3, a_2^3) of the adapted frame, plus the frame itself."""
    frame = adapted_frame(patch, uv, report)
    C = frame.coefficients
    return C[2, 2], C[0, 2], C[1, 2], frame


def chn_residual(model, patch, uv, report=None):
    _check_ambient(model, patch, BCV)
    if report is None:
        report = shape_report(patch, uv)
    c3, a13, a23, _ = _normal_coefficients(patch, uv, report)
    m, l = model.m, model.l
    k = l * l - 4.0 * m
    return (
        report.norm_a_squared - (4.0 * m - 0.5 * l * l) - k * c3 * c3,
        k * c3 * a13,
        k * c3 * a23,
    )


def csl_residual(model, patch, uv, report=None):
    _check_ambient(model, patch, SOL)
    if report is None:
        report = shape_report(patch, uv)
    c3, a13, a23, _ = _normal_coefficients(patch, uv, report)
    return (report.norm_a_squared + 2.0 * c3 * c3, c3 * a13, c3 * a23)


def _closed_form_ricci(model, c3, a3):
    """Ric(xi, xi) and (Ric(xi, e_1), Ric(xi, e_2)) from the frame coefficients."""
    if model.kind == BCV:
        k = model.l ** 2 - 4.0 * model.m
        return (4.0 * model.m - 0.5 * model.l ** 2) + k * c3 * c3, k * c3 * a3
    if model.kind == SOL:
        return -2.0 * c3 * c3, -2.0 * c3 * a3
    return 2.0 * model.c, np.zeros(2)


def ricci_normal_identity(model, patch, uv, report=None):
    if patch.model != model:
        raise AmbientMismatchError('{} lives in {!r}, not {!r}'.format(patch.name, patch.model, model))
    if model.kind not in (BCV, SOL, SPACE_FORM):
        raise AmbientMismatchError('no closed-form Ricci data for {!r}'.format(model))
    if report is None:
        report = shape_report(patch, uv)
    c3, a13, a23, frame = _normal_coefficients(patch, uv, report)
    data = curvature_at(model, report.point)
    xi = report.normal.components
    numeric_normal = data.ricci(xi, xi)
    numeric_tangential = np.array([data.ricci(xi, frame.tangents[i]) for i in range(2)])
    closed_normal, closed_tangential = _closed_form_ricci(model, c3, np.array([a13, a23]))
    return RicciIdentity(
        normal_difference=float(numeric_normal - closed_normal),
        tangential_difference=float(np.linalg.norm(numeric_tangential - closed_tangential)),
    )


def umbilic_reduction_residual(patch, uv, step=None, extrapolate=True, report=None):
    """|2 lambda grad lambda - lambda (Ric xi)^T| with lambda = H, in the adapted frame."""
    if report is None:
        report = shape_report(patch, uv)
    frame = adapted_frame(patch, uv, report)
    dH = parameter_gradient(patch, mean_curvature_field(patch), uv, step, extrapolate)
    along = frame.parameter_basis @ dH
    data = curvature_at(patch.model, report.point)
    ricci = np.array([data.ricci(report.normal.components, frame.tangents[i]) for i in range(2)])
    lam = report.mean_curvature
    return float(np.linalg.norm(2.0 * lam * along - lam * ricci))


def interior_grid(patch, grid, step=None):
    """Grid points keeping 10% of each side, and at least the stencil reach, free."""
    nu, nv = grid
    reach = 2.0 * resolve_step(step)
    (u0, u1), (v0, v1) = patch.u_range, patch.v_range
    us = interior_linspace(u0, u1, nu, max(0.1 * (u1 - u0), reach))
    vs = interior_linspace(v0, v1, nv, max(0.1 * (v1 - v0), reach))
    return [(float(u), float(v)) for u in us for v in vs]
