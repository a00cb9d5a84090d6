import math

import numpy as np
from scipy import integrate, optimize

from biharmonica.exceptions import CurveError, InvalidPointError
from biharmonica.geometry import jets
from biharmonica.geometry.models import DOMAIN_GUARD

# Tolerance of the arclength quadrature and its inversion.
ARCLENGTH_TOLERANCE = 1e-10


def base_factor(m, x, y):
    """F = 1 + m(x^2 + y^2); the base metric is h = (dx^2 + dy^2) / F^2."""
    return 1.0 + m * (x * x + y * y)


def base_metric(m):
    def components(x, y):
        w = 1.0 / base_factor(m, x, y) ** 2
        return [[w, 0.0], [0.0, w]]
    return components


def check_base_point(m, x, y):
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidPointError('non-finite base point {}'.format((x, y)))
    if base_factor(m, x, y) <= DOMAIN_GUARD:
        raise InvalidPointError('base point {} is outside the valid disk for m={:g}'.format((x, y), m))


class PlaneCurve:
    """s -> (x(s), y(s)) in the conformal plane, written with the jet functions.

    ``arclength`` records that the parameter is h-arclength for the ``m`` the
    curve was built for.
    """

    def __init__(self, point, interval, arclength=False, name='curve', m=None):
        a, b = interval
        if not a < b:
            raise CurveError('empty curve interval {}'.format(interval))
        self.point = point
        self.interval = (float(a), float(b))
        self.arclength = arclength
        self.name = name
        self.m = m

    def __repr__(self):
        return 'PlaneCurve({!r}, s in {})'.format(self.name, self.interval)

    def __call__(self, s):
        return tuple(jets.value_of(c) for c in self.point(s))

    def jet(self, s):
        """(position, velocity, acceleration) at ``s``, each a 2-vector."""
        (t,) = jets.seed((float(s),))
        values, grads, hessians = jets.split(self.point(t), 1)
        return values, grads[0], hessians[0, 0]

    def speed(self, m, s):
        p, d1, _ = self.jet(s)
        return math.hypot(*d1) / base_factor(m, *p)

    def sample(self, count=5):
        return np.linspace(self.interval[0], self.interval[1], count)


def circle(m, radius):
    """The origin-centred chart circle of radius ``radius`` at unit h-speed.

    It runs clockwise, so its right-hand normal (y', -x') points to the
    centre and the geodesic curvature (1 - m radius^2) / radius is positive
    inside the equator.
    """
    if not radius > 0:
        raise CurveError('circle radius must be positive, got {!r}'.format(radius))
    check_base_point(m, radius, 0.0)
    F = base_factor(m, radius, 0.0)
    rate = F / radius

    def point(s):
        angle = rate * s
        return (radius * jets.cos(angle), -radius * jets.sin(angle))

    return PlaneCurve(point, (0.0, 2.0 * math.pi / rate), arclength=True, name='circle r={:g}'.format(radius), m=m)


def line(m, angle=0.0, half_length=0.5):
    """The chart line through the origin at ``angle``, at unit h-speed."""
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    k = math.sqrt(abs(m))
    if m > 0:
        # t = tan(k s) / k, keep k s clear of pi / 2
        half_length = min(half_length, 0.4 * math.pi / k)

        def radial(s):
            return jets.tan(k * s) / k
    elif m < 0:
        half_length = min(half_length, 1.0 / k)

        def radial(s):
            return jets.tanh(k * s) / k
    else:
        def radial(s):
            return s

    def point(s):
        t = radial(s)
        return (cos_a * t, sin_a * t)

    return PlaneCurve(
        point, (-half_length, half_length), arclength=True, name='line angle={:g}'.format(angle), m=m,
    )


def _speed_jet(m, curve, sigma):
    """h-speed v and dv/dsigma of ``curve`` at ``sigma``."""
    p, d1, d2 = curve.jet(sigma)
    F = base_factor(m, *p)
    euclid = math.hypot(*d1)
    if euclid == 0.0:
        raise CurveError('{} has zero speed at {:g}'.format(curve.name, sigma))
    dF = 2.0 * m * (p @ d1)
    return euclid / F, (d1 @ d2) / (euclid * F) - euclid * dF / (F * F)


def reparametrize_by_arclength(m, curve):
    """The same curve parametrised by h-arclength from its start."""
    a, b = curve.interval

    def speed(sigma):
        return _speed_jet(m, curve, sigma)[0]

    def length(sigma):
        value, _ = integrate.quad(speed, a, sigma, epsabs=ARCLENGTH_TOLERANCE, epsrel=ARCLENGTH_TOLERANCE)
        return value

    total = length(b)
    if not total > 0:
        raise CurveError('{} has zero length'.format(curve.name))

    def parameter(s):
        if s <= 0.0:
            return a
        if s >= total:
            return b
        return optimize.brentq(lambda sigma: length(sigma) - s, a, b, xtol=ARCLENGTH_TOLERANCE)

    def point(s):
        sigma = parameter(jets.value_of(s))
        if not isinstance(s, jets.Jet):
            return curve(sigma)
        v, dv = _speed_jet(m, curve, sigma)
        # d sigma / ds = 1 / v, d^2 sigma / ds^2 = -v' / v^3
        return curve.point(s.compose(sigma, 1.0 / v, -dv / v ** 3))

    return PlaneCurve(point, (0.0, total), arclength=True, name='{} (arclength)'.format(curve.name), m=m)
