"""Coordinate tensor algebra on metric jets.

Index layout: ``dg[k, i, j] = d_k g_ij``, ``ddg[k, l, i, j] = d_k d_l g_ij``,
``gamma[k, i, j] = Gamma^k_ij`` and ``riemann_op[i, j, k, l]`` is the
``l``-component of ``R(d_i, d_j) d_k`` with
``R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``.

Nothing here depends on the dimension, so the base surfaces of Hopf
cylinders reuse these routines.
"""
import numpy as np

from biharmonica.geometry import jets


def metric_jet(components, point):
    """Evaluate ``components(*coords)`` on seeded jets; return (g, dg, ddg)."""
    n = len(point)
    return jets.split(components(*jets.seed(point)), n)


def _lowered_sum(dg):
    # T[l, i, j] = d_i g_jl + d_j g_il - d_l g_ij
    return np.einsum('ijl->lij', dg) + np.einsum('jil->lij', dg) - dg


def christoffel_symbols(g, dg, ginv=None):
    if ginv is None:
        ginv = np.linalg.inv(g)
    return 0.5 * np.einsum('kl,lij->kij', ginv, _lowered_sum(dg))


def christoffel_derivatives(g, dg, ddg, ginv=None):
    """``dgamma[m, k, i, j] = d_m Gamma^k_ij``."""
    if ginv is None:
        ginv = np.linalg.inv(g)
    T = _lowered_sum(dg)
    dT = np.einsum('mijl->mlij', ddg) + np.einsum('mjil->mlij', ddg) - ddg
    dginv = -np.einsum('ka,mab,bl->mkl', ginv, dg, ginv)
    return 0.5 * (np.einsum('mkl,lij->mkij', dginv, T) + np.einsum('kl,mlij->mkij', ginv, dT))


def riemann_operator(gamma, dgamma):
    return (
        np.einsum('iljk->ijkl', dgamma)
        - np.einsum('jlik->ijkl', dgamma)
        + np.einsum('mjk,lim->ijkl', gamma, gamma)
        - np.einsum('mik,ljm->ijkl', gamma, gamma)
    )


def lowered_riemann(riemann_op, g):
    """``R[a, b, c, d] = R(d_a, d_b, d_c, d_d) = g(R(d_c, d_d) d_b, d_a)``."""
    return np.einsum('cdbl,la->abcd', riemann_op, g)


def ricci_tensor(riemann_op, g, ginv=None):
    """``Ric[i, a] = sum over an orthonormal basis of g(R(d_i, e) e, d_a)``."""
    if ginv is None:
        ginv = np.linalg.inv(g)
    return np.einsum('ijkl,la,jk->ia', riemann_op, g, ginv)
