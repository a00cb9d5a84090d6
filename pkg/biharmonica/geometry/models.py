import math
from collections import namedtuple

import numpy as np

from biharmonica.exceptions import InvalidPointError, ModelError
from biharmonica.geometry import jets

BCV = 'BCV'
SOL = 'Sol'
SPACE_FORM = 'SpaceFormChart'
MODEL_KINDS = (BCV, SOL, SPACE_FORM)

# Conformal factors at or below this value are outside the usable chart.
DOMAIN_GUARD = 0.05


class ChartPoint(namedtuple('ChartPoint', 'x y z')):
    __slots__ = ()

    @classmethod
    def of(cls, coords):
        if isinstance(coords, cls):
            return coords
        x, y, z = coords
        return cls(float(x), float(y), float(z))

    def as_array(self):
        return np.array([self.x, self.y, self.z], dtype=float)


class TangentVector(namedtuple('TangentVector', 'base components')):
    __slots__ = ()

    def __new__(cls, base, components):
        components = np.array(components, dtype=float).reshape(3)
        return super().__new__(cls, ChartPoint.of(base), components)

    def __add__(self, other):
        _check_same_base(self, other)
        return TangentVector(self.base, self.components + other.components)

    def __sub__(self, other):
        _check_same_base(self, other)
        return TangentVector(self.base, self.components - other.components)

    def __mul__(self, scalar):
        return TangentVector(self.base, self.components * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return TangentVector(self.base, -self.components)

    def inner(self, model, other):
        _check_same_base(self, other)
        return float(self.components @ model.metric_at(self.base) @ other.components)

    def norm(self, model):
        return math.sqrt(max(self.inner(model, self), 0.0))


def _check_same_base(*vectors):
    base = vectors[0].base
    for v in vectors[1:]:
        if not np.allclose(base, v.base, rtol=0.0, atol=1e-12):
            raise InvalidPointError('tangent vectors are based at different points: {} and {}'.format(base, v.base))


class MetricModel:
    """A 3-manifold chart: metric components and an orthonormal frame.

    Subclasses implement :meth:`components` and :meth:`frame` with the
    helpers in :mod:`biharmonica.geometry.jets`, so the same formula is
    evaluated on floats or on seeded jets. Instances are immutable and
    hashable by ``(kind, params)``.
    """
    kind = None
    PARAM_NAMES = ()

    def __init__(self, **params):
        values = {}
        for name in self.PARAM_NAMES:
            try:
                value = float(params.pop(name, 0.0))
            except (TypeError, ValueError):
                raise ModelError('parameter {} must be a real number'.format(name))
            if not math.isfinite(value):
                raise ModelError('parameter {} must be finite, got {}'.format(name, value))
            values[name] = value
        if params:
            raise ModelError('unknown parameters for {}: {}'.format(self.kind, ', '.join(sorted(params))))
        object.__setattr__(self, '_params', tuple(values.items()))

    def __setattr__(self, field, value):
        raise AttributeError('{} is immutable'.format(type(self).__name__))

    @property
    def params(self):
        return dict(self._params)

    def __getattr__(self, field):
        for name, value in self.__dict__.get('_params', ()):
            if name == field:
                return value
        raise AttributeError(field)

    def __eq__(self, other):
        return isinstance(other, MetricModel) and (self.kind, self._params) == (other.kind, other._params)

    def __hash__(self):
        return hash((self.kind, self._params))

    def __repr__(self):
        return '{}({})'.format(self.kind, ', '.join('{}={:g}'.format(k, v) for k, v in self._params))

    def conformal_factor(self, x, y, z):
        return 1.0

    def check_point(self, p):
        p = ChartPoint.of(p)
        if not all(math.isfinite(c) for c in p):
            raise InvalidPointError('non-finite chart point {}'.format(tuple(p)))
        if self.conformal_factor(*p) <= DOMAIN_GUARD:
            raise InvalidPointError('{} is outside the valid domain of {}'.format(tuple(p), self))
        return p

    def is_valid(self, p):
        try:
            self.check_point(p)
        except InvalidPointError:
            return False
        return True

    def components(self, x, y, z):
        raise NotImplementedError

    def frame(self, x, y, z):
        raise NotImplementedError

    def metric_at(self, p):
        p = self.check_point(p)
        return np.array(self.components(*p), dtype=float)

    def frame_at(self, p):
        p = self.check_point(p)
        return np.array(self.frame(*p), dtype=float)

    def frame_field(self, index):
        """The coordinate components of E_index (1-based) as a field."""
        if index not in (1, 2, 3):
            raise ModelError('frame index must be 1, 2 or 3, got {}'.format(index))
        return lambda x, y, z: self.frame(x, y, z)[index - 1]


class BCVModel(MetricModel):
    kind = BCV
    PARAM_NAMES = ('m', 'l')

    def conformal_factor(self, x, y, z):
        return 1.0 + self.m * (x * x + y * y)

    def components(self, x, y, z):
        m, l = self.m, self.l
        F = 1.0 + m * (x * x + y * y)
        base = 1.0 / (F * F)
        # coefficients of dz + (l/2)(y dx - x dy)/F
        a = 0.5 * l * y / F
        b = -0.5 * l * x / F
        return [
            [base + a * a, a * b, a],
            [a * b, base + b * b, b],
            [a, b, 1.0],
        ]

    def frame(self, x, y, z):
        l = self.l
        F = 1.0 + self.m * (x * x + y * y)
        return [
            [F, 0.0, -0.5 * l * y],
            [0.0, F, 0.5 * l * x],
            [0.0, 0.0, 1.0],
        ]


class SolModel(MetricModel):
    kind = SOL

    def components(self, x, y, z):
        return [
            [jets.exp(2.0 * z), 0.0, 0.0],
            [0.0, jets.exp(-2.0 * z), 0.0],
            [0.0, 0.0, 1.0],
        ]

    def frame(self, x, y, z):
        return [
            [jets.exp(-z), 0.0, 0.0],
            [0.0, jets.exp(z), 0.0],
            [0.0, 0.0, 1.0],
        ]


class SpaceFormModel(MetricModel):
    """Constant curvature c in the conformal chart g = delta / sigma^2."""
    kind = SPACE_FORM
    PARAM_NAMES = ('c',)

    def conformal_factor(self, x, y, z):
        return 1.0 + 0.25 * self.c * (x * x + y * y + z * z)

    def components(self, x, y, z):
        sigma = self.conformal_factor(x, y, z)
        w = 1.0 / (sigma * sigma)
        return [[w, 0.0, 0.0], [0.0, w, 0.0], [0.0, 0.0, w]]

    def frame(self, x, y, z):
        sigma = self.conformal_factor(x, y, z)
        return [[sigma, 0.0, 0.0], [0.0, sigma, 0.0], [0.0, 0.0, sigma]]


MODEL_CLASSES = {
    BCV: BCVModel,
    SOL: SolModel,
    SPACE_FORM: SpaceFormModel,
}

_KIND_ALIASES = {
    'bcv': BCV,
    'sol': SOL,
    'spaceformchart': SPACE_FORM,
    'space-form': SPACE_FORM,
    'spaceform': SPACE_FORM,
}


def make_model(kind, params=None, **kwargs):
    params = dict(params or {}, **kwargs)
    try:
        cls = MODEL_CLASSES[kind]
    except KeyError:
        try:
            cls = MODEL_CLASSES[_KIND_ALIASES[str(kind).lower()]]
        except KeyError:
            raise ModelError('unknown model kind {!r}; expected one of {}'.format(kind, ', '.join(MODEL_KINDS)))
    return cls(**params)


def metric_at(model, p):
    return model.metric_at(p)


def orthonormal_frame_at(model, p):
    p = model.check_point(p)
    E = model.frame_at(p)
    return tuple(TangentVector(p, E[i]) for i in range(3))


def frame_coefficients(model, v):
    """Components of ``v`` in the orthonormal frame: g(v, E_i)."""
    p = model.check_point(v.base)
    return model.frame_at(p) @ model.metric_at(p) @ v.components


def thurston_geometry(model):
    if model.kind == SOL:
        return 'Sol'
    if model.kind == SPACE_FORM:
        if model.c > 0:
            return 'S3'
        return 'H3' if model.c < 0 else 'E3'
    m, l = model.m, model.l
    if l == 0.0:
        if m == 0.0:
            return 'E3'
        return 'S2xR' if m > 0 else 'H2xR'
    if m == 0.0:
        return 'Nil'
    if m < 0:
        return 'SL2R'
    if math.isclose(l * l, 4.0 * m, rel_tol=1e-12):
        return 'S3'
    return 'SU2'
