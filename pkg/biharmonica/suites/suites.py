"""Named verification suites.

Each suite is a generator of :class:`CheckRecord` objects registered under
its command-line name; ``run_suite`` runs one and assembles the report.
"""
import itertools
import logging
import math
import time
from collections import namedtuple
from functools import partial

import numpy as np

from biharmonica.biharmonic import (
    MINIMAL,
    NOT_BIHARMONIC,
    PROPER_BIHARMONIC,
    chn_residual,
    cmc_defect,
    csl_residual,
    interior_grid,
    residual_cmc,
    residual_full,
    ricci_normal_identity,
    umbilic_reduction_residual,
    verdict,
)
from biharmonica.exceptions import ConfigError
from biharmonica.geometry import (
    BCV,
    SOL,
    SPACE_FORM,
    TangentVector,
    covariant_derivative_at,
    curvature_at,
    jets,
    lie_bracket_frame_at,
    make_model,
    metric_at,
)
from biharmonica.hopf import (
    PlaneCurve,
    base_geodesic_curvature,
    base_sectional_curvature,
    circle,
    circle_for_kg,
    critical_curvature,
    curve_ode_residual,
    fiber_torsion,
    hopf_cylinder,
    hopf_invariants,
    lift_cylinder,
    properness_conditions,
    reparametrize_by_arclength,
)
from biharmonica.server import server
from biharmonica.settings import settings
from biharmonica.suites.report import SuiteReport, lower, upper, verdict_check
from biharmonica.suites.tables import table_deviations
from biharmonica.surface import (
    SurfacePatch,
    codazzi_umbilic_sides,
    geodesic_sphere,
    laplace_beltrami,
    plane,
    shape_report,
    vertical_cylinder,
)
from biharmonica.surface.catalog import PLANE_AXES
from biharmonica.util import halton_points, parse_grid

logger = logging.getLogger(__name__)

# Tolerances the suites assert at; residual checks use the configured tol.
TABLE_TOLERANCE = 1e-8
ORTHONORMAL_TOLERANCE = 1e-10
CONNECTION_TOLERANCE = 1e-7
SHAPE_TOLERANCE = 1e-6
INVARIANT_TOLERANCE = 1e-9
CLOSED_FORM_TOLERANCE = 1e-12
CMC_TOLERANCE = 1e-5
H_SYMMETRY_TOLERANCE = 1e-7
PERTURBATION_FLOOR = 1e-2
NON_BIHARMONIC_FLOOR = 0.5
CONVERGENCE_ORDER_FLOOR = 1.9
ARCLENGTH_TOLERANCE = 1e-7

TABLE_SETTINGS = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0), (0.25, 0.0), (-0.125, 0.0))
HOPF_SETTINGS = ((1.0, 0.0), (1.0, 1.0), (1.0, math.sqrt(2.0)), (0.25, 0.0))
RADIUS_PERTURBATION = 1.05
ACCELERATING_INTERVAL = (0.5, 2.0)
SOL_OFFSETS = (0.0, 0.3)
SOL_CYLINDER_RADII = (0.5, 1.0)
SCALED_SPHERE_CURVATURES = (0.5, 2.0)
SAMPLE_BOX = 0.5
PROPERTY_POINTS = 100
PROPERTY_SUBSET = 20
LAPLACIAN_STEPS = (0.1, 0.05, 0.025)

FULL_ORDER = (
    'geometry-tables',
    'hopf-circle',
    'sol-cmc',
    'sphere-in-s3',
    'umbilical-codazzi',
    'curve-ode',
    'properties',
)

SUITES = {}


class SuiteConfig(namedtuple('SuiteConfig', 'tol margin_floor fd_step grid seed')):
    __slots__ = ()

    @classmethod
    def from_settings(cls, **overrides):
        """The current settings, with ``overrides`` taking precedence."""
        values = {
            'tol': float(settings.TOL),
            'margin_floor': float(settings.MARGIN_FLOOR),
            'fd_step': float(settings.FD_STEP),
            'grid': settings.GRID,
            'seed': int(settings.SEED),
        }
        for key, value in overrides.items():
            if key not in values:
                raise ConfigError('unknown suite option {}'.format(key))
            if value is not None:
                values[key] = value
        for key in ('tol', 'margin_floor', 'fd_step'):
            value = float(values[key])
            if not (math.isfinite(value) and value > 0):
                raise ConfigError('{} must be positive, got {!r}'.format(key, values[key]))
            values[key] = value
        values['grid'] = parse_grid(values['grid'])
        if int(values['seed']) < 0:
            raise ConfigError('seed must be nonnegative, got {!r}'.format(values['seed']))
        values['seed'] = int(values['seed'])
        return cls(**values)

    def as_dict(self):
        return {
            'tol': self.tol,
            'margin_floor': self.margin_floor,
            'fd_step': self.fd_step,
            'grid': '{}x{}'.format(*self.grid),
            'seed': self.seed,
        }


def suite(name):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


def _label(model):
    return repr(model).replace(' ', '')


def _verdict(patch, config):
    return verdict(patch, grid=config.grid, tol=config.tol, margin_floor=config.margin_floor, step=config.fd_step)


def _reports(patch, config):
    return server.map(partial(shape_report, patch), interior_grid(patch, config.grid, config.fd_step))


def _spread(values):
    return max(values) - min(values)


def _sample_points(config, count=PROPERTY_POINTS):
    return halton_points(count, [-SAMPLE_BOX] * 3, [SAMPLE_BOX] * 3, seed=config.seed)


@suite('geometry-tables')
def geometry_tables(config):
    axis = np.linspace(-SAMPLE_BOX, SAMPLE_BOX, 5)
    points = [tuple(float(c) for c in p) for p in itertools.product(axis, repeat=3)]
    models = [make_model(BCV, m=m, l=l) for m, l in TABLE_SETTINGS]
    models += [make_model(SOL), make_model(SPACE_FORM, c=1.0), make_model(SPACE_FORM, c=-1.0)]
    for model in models:
        deviations = server.map(partial(table_deviations, model), points)
        for table in sorted(deviations[0]):
            yield upper(
                '{}.{}'.format(_label(model), table),
                '{} {} against the closed forms over a 5x5x5 grid'.format(model, table),
                max(d[table] for d in deviations),
                TABLE_TOLERANCE,
            )

    values = (
        ('BCV(m=1,l=0).g_xx', 'g_xx = 1/F^2 at (1, 0, 0)', make_model(BCV, m=1.0, l=0.0), (1.0, 0.0, 0.0), (0, 0), 0.25),
        ('BCV(m=1,l=2).g_xz', 'g_xz = (l/2)(y/F) at (0, 1, 0)', make_model(BCV, m=1.0, l=2.0), (0.0, 1.0, 0.0), (0, 2), 0.5),
        ('Sol.g_xx', 'g_xx = e^{2z} at (0, 0, ln 2)', make_model(SOL), (0.0, 0.0, math.log(2.0)), (0, 0), 4.0),
    )
    for id, desc, model, p, (i, j), expected in values:
        yield upper(id, desc, abs(metric_at(model, p)[i, j] - expected), TABLE_TOLERANCE)


def _accelerating_circle(radius):
    """The clockwise circle of chart radius ``radius`` at angle sigma^2."""
    def point(sigma):
        angle = sigma * sigma
        return (radius * jets.cos(angle), -radius * jets.sin(angle))
    return PlaneCurve(point, ACCELERATING_INTERVAL, name='accelerating circle r={:g}'.format(radius))


def _hopf_checks(m, l, config):
    tag = 'm={:g},l={:g}'.format(m, l)
    kappa = critical_curvature(m, l)
    invariants = hopf_invariants(m, l, kappa)
    curve = circle(m, circle_for_kg(m, kappa))
    patch = lift_cylinder(m, l, curve)

    result = _verdict(patch, config)
    yield upper(tag + '.residual', 'max full residual over the critical circle', result.max_residual, config.tol)
    yield verdict_check(tag + '.verdict', 'cylinder over the critical circle', result, PROPER_BIHARMONIC, config.tol)
    yield upper(tag + '.chn', 'reduced BCV system', result.chn_max, config.tol)

    reports = _reports(patch, config)
    yield upper(
        tag + '.mean_curvature', 'H = kappa_g / 2',
        max(abs(abs(r.mean_curvature) - invariants.mean_curvature) for r in reports), SHAPE_TOLERANCE,
    )
    yield upper(
        tag + '.norm_a', '|A|^2 = kappa_g^2 + l^2 / 2',
        max(abs(r.norm_a_squared - invariants.norm_a_squared) for r in reports), SHAPE_TOLERANCE,
    )
    yield upper(
        tag + '.fiber_constancy', 'shape data does not vary over the cylinder',
        max(_spread([r.mean_curvature for r in reports]), _spread([r.norm_a_squared for r in reports])),
        INVARIANT_TOLERANCE,
    )

    samples = curve.sample()
    yield upper(
        tag + '.kappa_g', 'numeric geodesic curvature of the base circle',
        max(abs(base_geodesic_curvature(m, curve, s) - kappa) for s in samples), INVARIANT_TOLERANCE,
    )
    yield upper(
        tag + '.tau_g', 'fiber torsion = -l / 2',
        max(abs(fiber_torsion(m, l, curve, s) + 0.5 * l) for s in samples), INVARIANT_TOLERANCE,
    )
    yield upper(
        tag + '.radius', 'R = 1 / sqrt(8m - l^2)',
        abs(invariants.radius - 1.0 / math.sqrt(8.0 * m - l * l)), INVARIANT_TOLERANCE,
    )
    by_arclength = reparametrize_by_arclength(m, _accelerating_circle(circle_for_kg(m, kappa)))
    interior = by_arclength.sample()[1:-1]
    yield upper(
        tag + '.arclength', 'geodesic curvature after reparametrizing a non-uniform circle by arclength',
        max(
            max(abs(base_geodesic_curvature(m, by_arclength, s) - kappa), abs(by_arclength.speed(m, s) - 1.0))
            for s in interior
        ),
        ARCLENGTH_TOLERANCE,
    )
    yield upper(
        tag + '.base_curvature', 'Gaussian curvature of the base = 4m',
        max(abs(base_sectional_curvature(m, curve(s)) - 4.0 * m) for s in samples), TABLE_TOLERANCE,
    )
    properness = properness_conditions(m, l, kappa)
    yield upper(
        tag + '.properness', 'H^2 = (4m - l^2) / 4 and |A|^2 = 4m - l^2 / 2',
        max(abs(properness.mean_curvature_condition), abs(properness.norm_condition)), INVARIANT_TOLERANCE,
    )


@suite('hopf-circle')
def hopf_circle(config):
    for m, l in HOPF_SETTINGS:
        yield from _hopf_checks(m, l, config)

    patch = hopf_cylinder(1.0, 0.0, radius_scale=RADIUS_PERTURBATION)
    chn = chn_residual(patch.model, patch, patch.midpoint())
    yield lower('perturbed.chn', 'first reduced condition on a 5% larger circle', abs(chn[0]), PERTURBATION_FLOOR)
    yield verdict_check(
        'perturbed.verdict', 'cylinder over a 5% larger circle', _verdict(patch, config), NOT_BIHARMONIC, config.tol,
    )

    boundary = hopf_cylinder(1.0, 2.0)
    yield verdict_check(
        'boundary.verdict', 'cylinder at 4m = l^2 is minimal only', _verdict(boundary, config), MINIMAL, config.tol,
    )


@suite('sol-cmc')
def sol_cmc(config):
    model = make_model(SOL)
    candidates = [plane(model, axis, c) for axis in PLANE_AXES for c in SOL_OFFSETS]
    for patch in candidates:
        yield upper(
            patch.name + '.cmc_defect', 'CMC candidate: max |grad H|',
            cmc_defect(patch, config.fd_step), CMC_TOLERANCE,
        )
        yield verdict_check(
            patch.name + '.verdict', 'never proper biharmonic in Sol',
            _verdict(patch, config), (MINIMAL, NOT_BIHARMONIC), config.tol,
        )

    # coordinate cylinders are not CMC in Sol
    for patch in [vertical_cylinder(model, r) for r in SOL_CYLINDER_RADII]:
        yield lower(
            patch.name + '.cmc_defect', 'non-CMC control: max |grad H|',
            cmc_defect(patch, config.fd_step), PERTURBATION_FLOOR,
        )
        yield verdict_check(
            patch.name + '.verdict', 'non-CMC control, never proper biharmonic in Sol',
            _verdict(patch, config), (MINIMAL, NOT_BIHARMONIC), config.tol,
        )

    for c in SOL_OFFSETS:
        patch = plane(model, 'z', c)
        reports = _reports(patch, config)
        yield upper(patch.name + '.mean_curvature', 'H = 0', max(abs(r.mean_curvature) for r in reports), TABLE_TOLERANCE)
        yield upper(
            patch.name + '.norm_a', '|A|^2 = 2',
            max(abs(r.norm_a_squared - 2.0) for r in reports), SHAPE_TOLERANCE,
        )
        csl = csl_residual(model, patch, patch.midpoint())
        yield upper(
            patch.name + '.csl', 'reduced Sol system reads (4, 0, 0)',
            max(abs(csl[0] - 4.0), abs(csl[1]), abs(csl[2])), SHAPE_TOLERANCE,
        )

    patch = plane(model, 'y', 0.0)
    csl = csl_residual(model, patch, patch.midpoint())
    report = shape_report(patch, patch.midpoint())
    yield upper(
        patch.name + '.csl', 'reduced Sol system reads (|A|^2, 0, 0)',
        max(abs(csl[0] - report.norm_a_squared), abs(csl[1]), abs(csl[2])), SHAPE_TOLERANCE,
    )


def _cot(x):
    return math.cos(x) / math.sin(x)


@suite('sphere-in-s3')
def sphere_in_s3(config):
    model = make_model(SPACE_FORM, c=1.0)
    patch = geodesic_sphere(model, math.pi / 4.0)
    result = _verdict(patch, config)
    yield upper('r=pi/4.residual', 'max full residual of the sphere of radius pi/4', result.max_residual, config.tol)
    yield verdict_check('r=pi/4.verdict', 'sphere of radius pi/4', result, PROPER_BIHARMONIC, config.tol)
    reports = _reports(patch, config)
    yield upper('r=pi/4.mean_curvature', 'H = 1', max(abs(abs(r.mean_curvature) - 1.0) for r in reports), SHAPE_TOLERANCE)
    yield upper('r=pi/4.umbilicity', 'totally umbilical', max(r.umbilicity for r in reports), SHAPE_TOLERANCE)
    reduced = residual_cmc(patch, patch.midpoint(), tol=config.tol, step=config.fd_step)
    yield upper('r=pi/4.reduced', 'constant mean curvature system', reduced.max_residual, config.tol)

    for label, radius in (('pi/3', math.pi / 3.0), ('pi/6', math.pi / 6.0)):
        patch = geodesic_sphere(model, radius)
        residual = residual_full(patch, patch.midpoint(), step=config.fd_step)
        H = _cot(radius)
        expected = H * (2.0 - 2.0 * H * H)
        yield lower(
            'r={}.residual'.format(label), '|normal residual| of the sphere of radius {}'.format(label),
            abs(residual.normal_residual), NON_BIHARMONIC_FLOOR,
        )
        yield upper(
            'r={}.cot_formula'.format(label), 'normal residual = cot r (2 - 2 cot^2 r)',
            abs(abs(residual.normal_residual) - abs(expected)), SHAPE_TOLERANCE,
        )
        yield verdict_check(
            'r={}.verdict'.format(label), 'sphere of radius {}'.format(label),
            _verdict(patch, config), NOT_BIHARMONIC, config.tol,
        )

    # S^2(1/sqrt(2c)) in S^3(1/sqrt(c)) is proper biharmonic for every c > 0
    for c in SCALED_SPHERE_CURVATURES:
        patch = geodesic_sphere(make_model(SPACE_FORM, c=c), math.pi / (4.0 * math.sqrt(c)))
        result = _verdict(patch, config)
        yield verdict_check(
            'c={:g}.verdict'.format(c), 'sphere of radius pi/(4 sqrt c) in the space form c={:g}'.format(c),
            result, PROPER_BIHARMONIC, config.tol,
        )
        yield upper(
            'c={:g}.mean_curvature'.format(c), '|H| = sqrt c',
            abs(result.min_mean_curvature - math.sqrt(c)), SHAPE_TOLERANCE,
        )

    for c in (-1.0, 0.0):
        patch = geodesic_sphere(make_model(SPACE_FORM, c=c), 0.5)
        yield verdict_check(
            'c={:g}.verdict'.format(c), 'umbilical sphere in the space form c={:g}'.format(c),
            _verdict(patch, config), (MINIMAL, NOT_BIHARMONIC), config.tol,
        )


def _umbilic_surfaces():
    s3 = make_model(SPACE_FORM, c=1.0)
    return [
        geodesic_sphere(s3, math.pi / 4.0),
        geodesic_sphere(s3, math.pi / 3.0),
        geodesic_sphere(make_model(SPACE_FORM, c=0.0), 0.5),
        geodesic_sphere(make_model(SPACE_FORM, c=-1.0), 0.5),
    ]


def _ricci_surfaces():
    sol = make_model(SOL)
    return _umbilic_surfaces() + [
        hopf_cylinder(1.0, 1.0),
        hopf_cylinder(1.0, 0.0, radius_scale=RADIUS_PERTURBATION),
        plane(make_model(BCV, m=1.0, l=1.0), 'x', 0.2),
        plane(sol, 'z', 0.0),
        vertical_cylinder(sol, 0.5),
    ]


def _surface_label(patch):
    return '{}/{}'.format(_label(patch.model), patch.name)


@suite('umbilical-codazzi')
def umbilical_codazzi(config):
    for patch in _umbilic_surfaces():
        tag = _surface_label(patch)
        points = interior_grid(patch, config.grid, config.fd_step)
        reports = server.map(partial(shape_report, patch), points)
        yield upper(tag + '.umbilicity', 'totally umbilical', max(r.umbilicity for r in reports), SHAPE_TOLERANCE)

        sides = server.map(partial(codazzi_umbilic_sides, patch, step=config.fd_step), points)
        yield upper(
            tag + '.codazzi', 'both sides of e_i(lambda) = Ric(e_i, xi) vanish',
            max(max(abs(x) for x in side) for side in sides), SHAPE_TOLERANCE,
        )

        result = _verdict(patch, config)
        yield upper(tag + '.cmc', 'umbilical surface has constant H', result.max_gradient, CMC_TOLERANCE)

        reductions = server.map(partial(umbilic_reduction_residual, patch, step=config.fd_step), points)
        yield upper(tag + '.reduction', 'umbilical form of the tangential equation', max(reductions), config.tol)

    for patch in _ricci_surfaces():
        points = interior_grid(patch, config.grid, config.fd_step)
        identities = server.map(partial(ricci_normal_identity, patch.model, patch), points)
        yield upper(
            _surface_label(patch) + '.ricci', 'Ric(xi, xi) and (Ric xi)^T against the frame closed forms',
            max(max(abs(i.normal_difference), i.tangential_difference) for i in identities), TABLE_TOLERANCE,
        )


def _constant_profile(value):
    # a plain float result makes curve_ode_residual fall back to finite differences
    return lambda s: value


@suite('curve-ode')
def curve_ode(config):
    for m, l in HOPF_SETTINGS + ((1.0, 2.0),):
        tag = 'm={:g},l={:g}'.format(m, l)
        kappa = critical_curvature(m, l)
        closed = curve_ode_residual(kappa, m, l, 0.0)
        yield upper(tag + '.closed_form', 'constant critical curvature', max(abs(x) for x in closed), CLOSED_FORM_TOLERANCE)
        numeric = curve_ode_residual(_constant_profile(kappa), m, l, 0.5)
        yield upper(tag + '.numeric', 'constant critical curvature, differentiated numerically',
                    max(abs(x) for x in numeric), INVARIANT_TOLERANCE)

    yield upper('zero.closed_form', 'kappa = 0', max(abs(x) for x in curve_ode_residual(0.0, 1.0, 0.0, 0.0)), 0.0)

    expected = np.array([3.0, 3.0, 0.0])
    linear = np.array(curve_ode_residual(lambda s: s, 1.0, 0.0, 1.0))
    yield upper('linear.jets', 'kappa(s) = s at s = 1 gives (3, 3, 0)', np.max(np.abs(linear - expected)), 0.0)
    linear = np.array(curve_ode_residual(lambda s: float(s), 1.0, 0.0, 1.0))
    yield upper('linear.numeric', 'kappa(s) = s by finite differences', np.max(np.abs(linear - expected)), SHAPE_TOLERANCE)

    off = curve_ode_residual(RADIUS_PERTURBATION * critical_curvature(1.0, 0.0), 1.0, 0.0, 0.0)
    yield lower('perturbed.closed_form', 'a perturbed constant curvature fails', abs(off[0]), PERTURBATION_FLOOR)


def _property_models():
    return [
        make_model(BCV, m=1.0, l=1.0),
        make_model(BCV, m=0.0, l=1.0),
        make_model(BCV, m=-0.125, l=0.5),
        make_model(SOL),
        make_model(SPACE_FORM, c=1.0),
        make_model(SPACE_FORM, c=-1.0),
    ]


def _frame_deviation(model, p):
    E = model.frame_at(p)
    return float(np.max(np.abs(E @ model.metric_at(p) @ E.T - np.eye(3))))


def _torsion(model, p):
    E = model.frame_at(p)
    worst = 0.0
    for i, j in ((1, 2), (1, 3), (2, 3)):
        a = covariant_derivative_at(model, p, model.frame_field(j), TangentVector(p, E[i - 1]))
        b = covariant_derivative_at(model, p, model.frame_field(i), TangentVector(p, E[j - 1]))
        worst = max(worst, (a - b - lie_bracket_frame_at(model, p, i, j)).norm(model))
    return worst


def _polynomial_field(rng):
    coefficients = rng.uniform(-1.0, 1.0, size=(3, 5)).tolist()

    def field(x, y, z):
        return [a + b * x + c * y + d * z + e * x * y for a, b, c, d, e in coefficients]
    return field


def _compatibility(model, p, rng):
    """|X g(Y, Z) - g(nabla_X Y, Z) - g(Y, nabla_X Z)| for random polynomial Y, Z."""
    Y, Z = _polynomial_field(rng), _polynomial_field(rng)
    X = rng.uniform(-1.0, 1.0, size=3)
    line = jets.seed_along(tuple(p), X)
    G, y, z = model.components(*line), Y(*line), Z(*line)
    inner = sum(y[i] * G[i][j] * z[j] for i in range(3) for j in range(3))
    lhs = inner.grad[0] if isinstance(inner, jets.Jet) else 0.0

    direction = TangentVector(p, X)
    y0 = TangentVector(p, [jets.value_of(c) for c in Y(*p)])
    z0 = TangentVector(p, [jets.value_of(c) for c in Z(*p)])
    rhs = (
        covariant_derivative_at(model, p, Y, direction).inner(model, z0) +
        y0.inner(model, covariant_derivative_at(model, p, Z, direction))
    )
    return abs(lhs - rhs)


def _curvature_symmetries(model, p):
    data = curvature_at(model, p)
    R = data.lowered_riemann
    Rop = data.riemann_op
    bianchi = Rop + np.einsum('jkil->ijkl', Rop) + np.einsum('kijl->ijkl', Rop)
    return max(
        np.max(np.abs(R + np.einsum('bacd->abcd', R))),
        np.max(np.abs(R + np.einsum('abdc->abcd', R))),
        np.max(np.abs(R - np.einsum('cdab->abcd', R))),
        np.max(np.abs(bianchi)),
    )


def _ricci_operator(model, p, rng):
    data = curvature_at(model, p)
    Z, W = rng.uniform(-1.0, 1.0, size=(2, 3))
    return abs(data.ricci_operator(Z).components @ data.metric @ W - data.ricci(Z, W))


def _h_surfaces():
    bcv = make_model(BCV, m=1.0, l=1.0)
    sol = make_model(SOL)
    saddle = SurfacePatch(
        bcv, lambda u, v: (u, v, 0.3 * u * v), (-0.4, 0.4), (-0.4, 0.4), name='saddle z=0.3uv',
    )
    return [
        saddle,
        hopf_cylinder(1.0, 1.0),
        geodesic_sphere(make_model(SPACE_FORM, c=1.0), math.pi / 4.0),
        vertical_cylinder(sol, 0.5),
        plane(sol, 'x', 0.2),
    ]


def _laplacian_order(config):
    """Observed orders of the unaccelerated Laplacian of cos v on the unit sphere."""
    patch = geodesic_sphere(make_model(SPACE_FORM, c=0.0), 1.0)
    uv = (1.0, 1.0)
    exact = -2.0 * math.cos(uv[1])
    errors = [
        abs(laplace_beltrami(patch, lambda u, v: jets.cos(v), uv, step=h, extrapolate=False) - exact)
        for h in LAPLACIAN_STEPS
    ]
    return min(math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1))


@suite('properties')
def properties(config):
    points = _sample_points(config)
    for model in _property_models():
        tag = _label(model)
        rng = np.random.default_rng(config.seed)
        subset = points[:PROPERTY_SUBSET]
        yield upper(
            tag + '.orthonormal', 'g(E_i, E_j) = delta_ij at {} quasi-random points'.format(len(points)),
            max(_frame_deviation(model, p) for p in points), ORTHONORMAL_TOLERANCE,
        )
        yield upper(tag + '.torsion', 'nabla is torsion free on frame fields',
                    max(_torsion(model, p) for p in subset), CONNECTION_TOLERANCE)
        yield upper(tag + '.compatibility', 'nabla is metric compatible',
                    max(_compatibility(model, p, rng) for p in subset), CONNECTION_TOLERANCE)
        yield upper(tag + '.symmetries', 'Riemann symmetries and the first Bianchi identity',
                    max(_curvature_symmetries(model, p) for p in subset), TABLE_TOLERANCE)
        yield upper(tag + '.ricci_operator', '<Ric(Z), W> = Ric(Z, W)',
                    max(_ricci_operator(model, p, rng) for p in subset), ORTHONORMAL_TOLERANCE)
        if model.kind == SPACE_FORM:
            einstein = max(
                np.max(np.abs(curvature_at(model, p).ricci_tensor - 2.0 * model.c * metric_at(model, p)))
                for p in subset
            )
            yield upper(tag + '.einstein', 'Ric = 2c g', einstein, TABLE_TOLERANCE)

    for patch in _h_surfaces():
        tag = _surface_label(patch)
        points = interior_grid(patch, config.grid, config.fd_step)
        reports = server.map(partial(shape_report, patch), points)
        yield upper(tag + '.h_symmetry', 'h is symmetric', max(r.h_asymmetry for r in reports), H_SYMMETRY_TOLERANCE)
        swapped = patch.swapped()
        flipped = server.map(partial(shape_report, swapped), [(v, u) for u, v in points])
        yield upper(
            tag + '.swap', 'exchanging u and v flips H and keeps |A|^2 and the umbilicity',
            max(
                max(abs(r.mean_curvature + s.mean_curvature), abs(r.norm_a_squared - s.norm_a_squared),
                    abs(r.umbilicity - s.umbilicity))
                for r, s in zip(reports, flipped)
            ),
            INVARIANT_TOLERANCE,
        )

    flat = plane(make_model(BCV, m=0.0, l=0.0), 'z', 0.0)
    uv = flat.midpoint()
    yield upper('flat.laplacian', 'Delta(u^2 + v^2) = 4 on a flat patch',
                abs(laplace_beltrami(flat, lambda u, v: u * u + v * v, uv, step=config.fd_step) - 4.0), SHAPE_TOLERANCE)
    yield upper('flat.harmonic', 'Delta(u^2 - v^2) = 0 on a flat patch',
                abs(laplace_beltrami(flat, lambda u, v: u * u - v * v, uv, step=config.fd_step)), SHAPE_TOLERANCE)
    yield lower('laplacian.order', 'observed convergence order of the Laplace-Beltrami operator',
                _laplacian_order(config), CONVERGENCE_ORDER_FLOOR)


def _run_checks(name, config):
    try:
        fn = SUITES[name]
    except KeyError:
        raise ConfigError('unknown suite {!r}; expected one of {}'.format(name, ', '.join(sorted(SUITES) + ['full'])))
    for check in fn(config):
        if check.passed:
            logger.info('[%s] %s: %.3e (tol %.1e)', name, check.id, check.residual, check.tol)
        else:
            logger.warning('[%s] %s failed: %.3e against %.1e (%s)', name, check.id, check.residual, check.tol,
                           check.desc)
        yield check


def run_suite(name, config=None):
    if config is None:
        config = SuiteConfig.from_settings()
    elif isinstance(config, dict):
        config = SuiteConfig.from_settings(**config)

    started = time.perf_counter()
    if name == 'full':
        checks = [
            check._replace(id='{}/{}'.format(part, check.id))
            for part in FULL_ORDER
            for check in _run_checks(part, config)
        ]
    else:
        checks = list(_run_checks(name, config))
    report = SuiteReport(name, config.as_dict(), checks, time.perf_counter() - started)
    logger.info('Suite %s: %d of %d checks passed', name, len(checks) - len(report.failures), len(checks))
    return report
