import numpy as np

from biharmonica.exceptions import InvalidPointError
from biharmonica.geometry.connection import curvature_at


def _common_base(vectors):
    base = vectors[0].base
    for v in vectors[1:]:
        if not np.allclose(base, v.base, rtol=0.0, atol=1e-12):
            raise InvalidPointError('mismatched base points {} and {}'.format(tuple(base), tuple(v.base)))
    return base


def riemann_at(model, p, X, Y, Z, W):
    """R(X, Y, Z, W) = g(R(Z, W)Y, X); all four vectors must sit at ``p``."""
    _common_base((X, Y, Z, W))
    return curvature_at(model, p).riemann(X, Y, Z, W)


def ricci_at(model, p, X, Y):
    _common_base((X, Y))
    return curvature_at(model, p).ricci(X, Y)


def ricci_operator_at(model, p, Z):
    return curvature_at(model, p).ricci_operator(Z)


def sectional_curvature(model, p, X, Y):
    data = curvature_at(model, p)
    g = data.metric
    x, y = X.components, Y.components
    area = (x @ g @ x) * (y @ g @ y) - (x @ g @ y) ** 2
    if area <= 0.0:
        raise InvalidPointError('sectional curvature needs two independent vectors')
    return data.riemann(X, Y, X, Y) / area


def frame_riemann_at(model, p):
    """R(E_a, E_b, E_c, E_d) for the model's orthonormal frame."""
    data = curvature_at(model, p)
    E = model.frame_at(data.point)
    return np.einsum('ijkl,ai,bj,ck,dl->abcd', data.lowered_riemann, E, E, E, E)


def frame_ricci_at(model, p):
    data = curvature_at(model, p)
    E = model.frame_at(data.point)
    return E @ data.ricci_tensor @ E.T
