import math
from collections import namedtuple

import numpy as np

from biharmonica.exceptions import DegenerateImmersionError, DomainError
from biharmonica.geometry import jets

# Relative size of |r_u x r_v| below which the Jacobian counts as rank deficient.
RANK_TOLERANCE = 1e-12
DEFAULT_FD_STEP = 1e-4


class ImmersionJet(namedtuple('ImmersionJet', 'point r_u r_v r_uu r_uv r_vv')):
    __slots__ = ()

    @property
    def tangents(self):
        return np.array([self.r_u, self.r_v])

    @property
    def second(self):
        """second[a, b] = d_a d_b r."""
        return np.array([[self.r_uu, self.r_uv], [self.r_uv, self.r_vv]])


class SurfacePatch:
    """An immersion (u, v) -> chart point on a rectangle, in a MetricModel.

    With ``analytic`` set, ``immersion`` must be written with the functions
    of :mod:`biharmonica.geometry.jets` so that its partials come out of a
    single jet evaluation; otherwise central differences of ``fd_step`` are
    used.
    """

    def __init__(self, model, immersion, u_range, v_range, analytic=True, fd_step=DEFAULT_FD_STEP, name='surface'):
        (u0, u1), (v0, v1) = u_range, v_range
        if not (u0 < u1 and v0 < v1):
            raise DomainError('empty parameter domain {}x{}'.format(u_range, v_range))
        self.model = model
        self.immersion = immersion
        self.u_range = (float(u0), float(u1))
        self.v_range = (float(v0), float(v1))
        self.analytic = analytic
        self.fd_step = fd_step
        self.name = name

    def __repr__(self):
        return 'SurfacePatch({!r} in {!r}, u={}, v={})'.format(self.name, self.model, self.u_range, self.v_range)

    def contains(self, u, v, reach=0.0):
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        slack = 1e-12
        return (
            u0 - slack <= u - reach and u + reach <= u1 + slack and
            v0 - slack <= v - reach and v + reach <= v1 + slack
        )

    def check_parameter(self, uv, reach=0.0):
        u, v = (float(t) for t in uv)
        if not (math.isfinite(u) and math.isfinite(v)):
            raise DomainError('non-finite parameter {}'.format((u, v)))
        if not self.contains(u, v, reach):
            if reach:
                raise DomainError('stencil of reach {:g} around {} leaves the domain {}x{}'.format(
                    reach, (u, v), self.u_range, self.v_range))
            raise DomainError('{} is outside the domain {}x{}'.format((u, v), self.u_range, self.v_range))
        return u, v

    def swapped(self):
        """The same surface with the parameters exchanged, (u, v) -> (v, u)."""
        immersion = self.immersion
        return SurfacePatch(
            self.model,
            lambda u, v: immersion(v, u),
            self.v_range,
            self.u_range,
            analytic=self.analytic,
            fd_step=self.fd_step,
            name='{} (swapped)'.format(self.name),
        )

    def midpoint(self):
        return 0.5 * sum(self.u_range), 0.5 * sum(self.v_range)


def _evaluate(patch, u, v):
    return np.array([jets.value_of(c) for c in patch.immersion(u, v)], dtype=float)


def _finite_difference_jet(patch, u, v):
    h = patch.fd_step
    r = _evaluate(patch, u, v)
    r_pu, r_mu = _evaluate(patch, u + h, v), _evaluate(patch, u - h, v)
    r_pv, r_mv = _evaluate(patch, u, v + h), _evaluate(patch, u, v - h)
    r_uv = (
        _evaluate(patch, u + h, v + h) - _evaluate(patch, u + h, v - h)
        - _evaluate(patch, u - h, v + h) + _evaluate(patch, u - h, v - h)
    ) / (4.0 * h * h)
    return (
        r,
        (r_pu - r_mu) / (2.0 * h),
        (r_pv - r_mv) / (2.0 * h),
        (r_pu - 2.0 * r + r_mu) / (h * h),
        r_uv,
        (r_pv - 2.0 * r + r_mv) / (h * h),
    )


def immersion_jet(patch, uv):
    u, v = patch.check_parameter(uv)
    if patch.analytic:
        values, grads, hessians = jets.split(patch.immersion(*jets.seed((u, v))), 2)
        parts = (values, grads[0], grads[1], hessians[0, 0], hessians[0, 1], hessians[1, 1])
    else:
        parts = _finite_difference_jet(patch, u, v)

    point = patch.model.check_point(parts[0])
    r_u, r_v = parts[1], parts[2]
    scale = np.linalg.norm(r_u) * np.linalg.norm(r_v)
    if scale == 0.0 or np.linalg.norm(np.cross(r_u, r_v)) <= RANK_TOLERANCE * scale:
        raise DegenerateImmersionError('rank-deficient Jacobian of {} at {}'.format(patch.name, (u, v)))
    return ImmersionJet(point, r_u, r_v, parts[3], parts[4], parts[5])
