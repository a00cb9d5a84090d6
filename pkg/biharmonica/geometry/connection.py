from collections import namedtuple
from functools import lru_cache

import numpy as np

from biharmonica.exceptions import InvalidPointError
from biharmonica.geometry import jets, tensors
from biharmonica.geometry.models import TangentVector


class CurvatureData(namedtuple('CurvatureData', 'point metric metric_derivatives inverse christoffels riemann_op')):
    """Metric, Christoffel symbols and curvature operator at one chart point."""
    __slots__ = ()

    def _components(self, v):
        if isinstance(v, TangentVector):
            if not np.allclose(v.base, self.point, rtol=0.0, atol=1e-12):
                raise InvalidPointError('vector based at {} used at {}'.format(tuple(v.base), tuple(self.point)))
            return v.components
        return np.asarray(v, dtype=float)

    @property
    def lowered_riemann(self):
        return tensors.lowered_riemann(self.riemann_op, self.metric)

    @property
    def ricci_tensor(self):
        return tensors.ricci_tensor(self.riemann_op, self.metric, self.inverse)

    def riemann(self, X, Y, Z, W):
        """R(X, Y, Z, W) = g(R(Z, W)Y, X)."""
        x, y, z, w = (self._components(v) for v in (X, Y, Z, W))
        return float(np.einsum('abcd,a,b,c,d->', self.lowered_riemann, x, y, z, w))

    def curvature_operator(self, X, Y, Z):
        """The vector R(X, Y)Z."""
        x, y, z = (self._components(v) for v in (X, Y, Z))
        return TangentVector(self.point, np.einsum('ijkl,i,j,k->l', self.riemann_op, x, y, z))

    def ricci(self, X, Y):
        return float(self._components(X) @ self.ricci_tensor @ self._components(Y))

    def ricci_operator(self, Z):
        return TangentVector(self.point, self.inverse @ self.ricci_tensor @ self._components(Z))

    def gamma(self, X, Y):
        """Gamma^k_ij X^i Y^j."""
        return np.einsum('kij,i,j->k', self.christoffels, self._components(X), self._components(Y))


@lru_cache(maxsize=4096)
def _curvature(model, p):
    g, dg, ddg = tensors.metric_jet(model.components, tuple(p))
    ginv = np.linalg.inv(g)
    gamma = tensors.christoffel_symbols(g, dg, ginv)
    dgamma = tensors.christoffel_derivatives(g, dg, ddg, ginv)
    data = CurvatureData(p, g, dg, ginv, gamma, tensors.riemann_operator(gamma, dgamma))
    # cached and shared between callers
    for arr in data[1:]:
        arr.setflags(write=False)
    return data


def curvature_at(model, p):
    return _curvature(model, model.check_point(p))


def christoffels_at(model, p):
    return curvature_at(model, p).christoffels


def directional_derivative(field, p, direction):
    """Derivative of the components of ``field`` along ``direction`` at ``p``."""
    values = field(*jets.seed_along(tuple(p), direction))
    return np.array([v.grad[0] if isinstance(v, jets.Jet) else 0.0 for v in values])


def _field_value(field, p):
    return np.array([jets.value_of(v) for v in field(*p)], dtype=float)


def covariant_derivative_at(model, p, field, direction):
    """nabla_X Y at p, with ``field`` a callable (x, y, z) -> three components."""
    p = model.check_point(p)
    X = direction.components if isinstance(direction, TangentVector) else np.asarray(direction, dtype=float)
    if isinstance(direction, TangentVector) and not np.allclose(direction.base, p, rtol=0.0, atol=1e-12):
        raise InvalidPointError('direction based at {} used at {}'.format(tuple(direction.base), tuple(p)))
    Y = _field_value(field, p)
    data = curvature_at(model, p)
    return TangentVector(p, directional_derivative(field, p, X) + data.gamma(X, Y))


def lie_bracket_at(model, p, field_a, field_b):
    p = model.check_point(p)
    A = _field_value(field_a, p)
    B = _field_value(field_b, p)
    return TangentVector(p, directional_derivative(field_b, p, A) - directional_derivative(field_a, p, B))


def lie_bracket_frame_at(model, p, i, j):
    return lie_bracket_at(model, p, model.frame_field(i), model.frame_field(j))


def frame_jacobian(model, p):
    """Frame components E[a, k] and their derivatives dE[m, a, k] = d_m E_a^k."""
    p = model.check_point(p)
    E, dE, _ = jets.split(model.frame(*jets.seed(tuple(p))), 3)
    return E, dE


def frame_connection_at(model, p):
    """C[i, j, k] = g(nabla_{E_i} E_j, E_k), all from one jet evaluation."""
    p = model.check_point(p)
    E, dE = frame_jacobian(model, p)
    data = curvature_at(model, p)
    # coordinate components of nabla_{E_i} E_j
    nabla = np.einsum('maj,im->iaj', dE, E) + np.einsum('kab,ia,jb->ijk', data.christoffels, E, E)
    return np.einsum('ijk,kl,cl->ijc', nabla, data.metric, E)


def frame_brackets_at(model, p):
    """B[i, j, k] = coefficient of E_k in [E_i, E_j]."""
    p = model.check_point(p)
    E, dE = frame_jacobian(model, p)
    g = model.metric_at(p)
    # E_i(E_j^k) = dE[m, j, k] E_i^m
    along = np.einsum('mjk,im->ijk', dE, E)
    bracket = along - np.einsum('ijk->jik', along)
    return np.einsum('ijk,kl,cl->ijc', bracket, g, E)
