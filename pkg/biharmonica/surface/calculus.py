import math
from collections import namedtuple

import numpy as np
from scipy import linalg

from biharmonica.exceptions import DomainError
from biharmonica.geometry import curvature_at, frame_coefficients
from biharmonica.geometry.models import TangentVector
from biharmonica.settings import settings
from biharmonica.surface.patch import immersion_jet


class ShapeReport(namedtuple('ShapeReport', (
    'point normal first_form second_form shape_operator mean_curvature '
    'norm_a_squared umbilicity principal_curvatures jet'
))):
    """Extrinsic data of a patch at one parameter point.

    ``second_form`` is h[a, b] = -g(nabla_{r_a} xi, r_b) as computed, before
    symmetrisation; ``shape_operator`` is I^-1 applied to its symmetric part
    and acts on parameter-space components.
    """
    __slots__ = ()

    @property
    def h_asymmetry(self):
        return abs(self.second_form[0, 1] - self.second_form[1, 0])


class AdaptedFrame(namedtuple('AdaptedFrame', 'point tangents normal coefficients parameter_basis')):
    """An orthonormal frame (e_1, e_2, xi) along the surface.

    ``tangents`` holds the coordinate components of e_1 and e_2,
    ``coefficients[i]`` the components of (e_1, e_2, xi)[i] in the model's
    orthonormal frame (a_1, a_2 and c in the usual notation), and
    ``parameter_basis[i]`` the (u, v) components of e_i.
    """
    __slots__ = ()

    @property
    def vectors(self):
        return (
            TangentVector(self.point, self.tangents[0]),
            TangentVector(self.point, self.tangents[1]),
            self.normal,
        )


def first_fundamental_form(patch, uv):
    jet = immersion_jet(patch, uv)
    return _pullback(patch.model.metric_at(jet.point), jet.tangents)


def _pullback(g, tangents):
    return tangents @ g @ tangents.T


def _normal_parts(G, tangents):
    n = np.cross(tangents[0], tangents[1])
    w = G @ n
    return n, w, math.sqrt(n @ w)


def unit_normal(patch, uv):
    jet = immersion_jet(patch, uv)
    G = curvature_at(patch.model, jet.point).inverse
    n, w, norm = _normal_parts(G, jet.tangents)
    return TangentVector(jet.point, w / norm)


def shape_report(patch, uv):
    jet = immersion_jet(patch, uv)
    data = curvature_at(patch.model, jet.point)
    g, G, dg = data.metric, data.inverse, data.metric_derivatives
    T, S = jet.tangents, jet.second

    first = _pullback(g, T)
    n, w, norm = _normal_parts(G, T)
    xi = w / norm

    # xi = G n / sqrt(n.G n), differentiated along r_a by the chain rule
    h = np.empty((2, 2))
    for a in range(2):
        dn = np.cross(S[a, 0], T[1]) + np.cross(T[0], S[a, 1])
        dG = -G @ np.einsum('kij,k->ij', dg, T[a]) @ G
        dw = dG @ n + G @ dn
        dnorm = (dn @ w + n @ dw) / (2.0 * norm)
        dxi = dw / norm - w * dnorm / (norm * norm)
        nabla_xi = dxi + data.gamma(T[a], xi)
        h[a] = -(T @ g @ nabla_xi)

    sym = 0.5 * (h + h.T)
    shape = np.linalg.solve(first, sym)
    principal = linalg.eigh(sym, first, eigvals_only=True)
    mean = 0.5 * float(np.trace(shape))
    return ShapeReport(
        point=jet.point,
        normal=TangentVector(jet.point, xi),
        first_form=first,
        second_form=h,
        shape_operator=shape,
        mean_curvature=mean,
        norm_a_squared=float(np.sum(principal ** 2)),
        umbilicity=abs(principal[1] - principal[0]) / math.sqrt(2.0),
        principal_curvatures=principal,
        jet=jet,
    )


def mean_curvature_field(patch):
    return lambda u, v: shape_report(patch, (u, v)).mean_curvature


def adapted_frame(patch, uv, report=None):
    """Gram-Schmidt of (r_u, r_v) with respect to g, completed by the unit normal."""
    if report is None:
        report = shape_report(patch, uv)
    first = report.first_form
    e1 = np.array([1.0 / math.sqrt(first[0, 0]), 0.0])
    e2 = np.array([-first[0, 1] / first[0, 0], 1.0])
    e2 /= math.sqrt(e2 @ first @ e2)
    basis = np.array([e1, e2])
    tangents = basis @ report.jet.tangents
    coefficients = np.array([
        frame_coefficients(patch.model, TangentVector(report.point, v))
        for v in (tangents[0], tangents[1], report.normal.components)
    ])
    return AdaptedFrame(report.point, tangents, report.normal, coefficients, basis)


def resolve_step(step=None):
    # In case the setting value changes.
    if step is None:
        step = float(settings.FD_STEP)
    if not (math.isfinite(step) and step > 0):
        raise DomainError('stencil step must be positive, got {!r}'.format(step))
    return step


class Stencil:
    """Values of a scalar field on the lattice uv + h * (i, j), each computed once."""

    def __init__(self, f, uv, h):
        self.f = f
        self.u, self.v = uv
        self.h = h
        self._values = {}

    def prime(self, i, j, value):
        self._values[(i, j)] = float(value)

    def __call__(self, i, j):
        try:
            return self._values[(i, j)]
        except KeyError:
            value = self._values[(i, j)] = float(self.f(self.u + i * self.h, self.v + j * self.h))
            return value

    def partial(self, a, i=0, j=0, stride=1):
        di, dj = (stride, 0) if a == 0 else (0, stride)
        return (self(i + di, j + dj) - self(i - di, j - dj)) / (2.0 * stride * self.h)

    def gradient(self, i=0, j=0, stride=1):
        return np.array([self.partial(0, i, j, stride), self.partial(1, i, j, stride)])


def _richardson(coarse, fine):
    return (4.0 * fine - coarse) / 3.0


def make_stencil(patch, f, uv, step, extrapolate, reach):
    u, v = patch.check_parameter(uv)
    h = resolve_step(step)
    patch.check_parameter((u, v), reach=reach * h)
    return Stencil(f, (u, v), 0.5 * h if extrapolate else h)


def stencil_gradient(stencil, extrapolate):
    if extrapolate:
        return _richardson(stencil.gradient(stride=2), stencil.gradient(stride=1))
    return stencil.gradient()


def parameter_gradient(patch, f, uv, step=None, extrapolate=True):
    """(d_u f, d_v f) by central differences."""
    stencil = make_stencil(patch, f, uv, step, extrapolate, reach=1)
    return stencil_gradient(stencil, extrapolate)


def pushforward(patch, uv, differential):
    """The tangent vector with g(V, r_a) = differential[a]."""
    jet = immersion_jet(patch, uv)
    first = _pullback(patch.model.metric_at(jet.point), jet.tangents)
    return TangentVector(jet.point, np.linalg.solve(first, differential) @ jet.tangents)


def intrinsic_gradient(patch, f, uv, step=None, extrapolate=True):
    return pushforward(patch, uv, parameter_gradient(patch, f, uv, step, extrapolate))


def _density_weights(patch, stencil):
    """(sqrt(det I), sqrt(det I) I^-1) at a lattice offset, memoised."""
    cache = {}

    def weights(i, j):
        try:
            return cache[(i, j)]
        except KeyError:
            first = first_fundamental_form(patch, (stencil.u + i * stencil.h, stencil.v + j * stencil.h))
            density = math.sqrt(np.linalg.det(first))
            entry = cache[(i, j)] = (density, density * np.linalg.inv(first))
            return entry
    return weights


def _divergence_form(stencil, weights, stride):
    total = 0.0
    for a in range(2):
        flux = []
        for sign in (1, -1):
            i, j = (sign * stride, 0) if a == 0 else (0, sign * stride)
            flux.append(weights(i, j)[1][a] @ stencil.gradient(i, j, stride))
        total += (flux[0] - flux[1]) / (2.0 * stride * stencil.h)
    return total / weights(0, 0)[0]


def stencil_laplacian(patch, stencil, extrapolate):
    weights = _density_weights(patch, stencil)
    if extrapolate:
        return _richardson(_divergence_form(stencil, weights, 2), _divergence_form(stencil, weights, 1))
    return _divergence_form(stencil, weights, 1)


def laplace_beltrami(patch, f, uv, step=None, extrapolate=True):
    """Delta f = (1/sqrt(det I)) d_a(sqrt(det I) I^ab d_b f), reach 2 * step."""
    stencil = make_stencil(patch, f, uv, step, extrapolate, reach=2)
    return stencil_laplacian(patch, stencil, extrapolate)


def codazzi_umbilic_sides(patch, uv, step=None, extrapolate=True, report=None):
    """Both sides of e_i(lambda) = Ric(e_i, xi) for lambda = H.

    Returns (e_1(lambda) - Ric(e_1, xi), e_2(lambda) - Ric(e_2, xi),
    |e(lambda)|, |Ric(e, xi)|); the first two vanish on umbilical surfaces.
    """
    if report is None:
        report = shape_report(patch, uv)
    frame = adapted_frame(patch, uv, report)
    dH = parameter_gradient(patch, mean_curvature_field(patch), uv, step, extrapolate)
    along = frame.parameter_basis @ dH
    data = curvature_at(patch.model, report.point)
    ricci = np.array([data.ricci(frame.tangents[i], report.normal) for i in range(2)])
    return (
        float(along[0] - ricci[0]),
        float(along[1] - ricci[1]),
        float(np.linalg.norm(along)),
        float(np.linalg.norm(ricci)),
    )
