import argparse
import logging
import math
import sys
import time

from biharmonica.biharmonic import MINIMAL, PROPER_BIHARMONIC, verdict
from biharmonica.exceptions import BiharmonicaError, ConfigError
from biharmonica.geometry import BCV, SOL, SPACE_FORM, make_model
from biharmonica.hopf import circle, circle_for_kg, critical_curvature, lift_cylinder, line
from biharmonica.server import server
from biharmonica.settings import LOG_LEVELS, settings
from biharmonica.suites import (
    SUITES,
    SuiteConfig,
    SuiteReport,
    mismatches,
    run_suite,
    sweep,
    upper,
    verdict_check,
    write_report,
)
from biharmonica.surface import geodesic_sphere, plane, vertical_cylinder
from biharmonica.surface.catalog import PLANE_AXES
from biharmonica.util import natural_duration

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

MODEL_CHOICES = {'bcv': BCV, 'sol': SOL, 'space-form': SPACE_FORM}
SURFACE_CHOICES = ('plane', 'sphere', 'hopf', 'cylinder')
CURVE_CHOICES = ('circle', 'line')
DEFAULT_RADIUS = math.pi / 4.0


def parse_range(text):
    """'a:b' -> (a, b); a single number is the degenerate range."""
    parts = text.split(':')
    try:
        if len(parts) == 1:
            value = float(parts[0])
            return value, value
        if len(parts) == 2:
            return float(parts[0]), float(parts[1])
    except ValueError:
        pass
    raise argparse.ArgumentTypeError('expected a number or a range a:b, got {!r}'.format(text))


def parse_steps(text):
    parts = text.lower().split('x')
    try:
        steps = tuple(int(p) for p in parts)
    except ValueError:
        steps = ()
    if len(steps) == 1:
        steps *= 2
    if len(steps) != 2:
        raise argparse.ArgumentTypeError('expected N or NxM, got {!r}'.format(text))
    return steps


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--grid', help='parameter grid per surface, NxM')
    common.add_argument('--tol', type=float, help='residual tolerance')
    common.add_argument('--margin-floor', type=float, help='smallest |H| of a proper biharmonic surface')
    common.add_argument('--fd-step', type=float, help='step of the parameter stencils')
    common.add_argument('--seed', type=int, help='seed of the quasi-random samples')
    common.add_argument('--out', help='output file, - for stdout')
    common.add_argument('--format', choices=['json', 'csv'], help='report format')
    common.add_argument('--config', help='key=value configuration file')
    common.add_argument('--log-level', choices=LOG_LEVELS, help='logging level on stderr')
    common.add_argument('--workers', type=int, help='evaluation threads')

    parser = argparse.ArgumentParser(
        prog='biharmonica',
        description='Numerical verification of biharmonic surfaces in homogeneous 3-manifolds.',
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    suite_parser = commands.add_parser('suite', parents=[common], help='run a named verification suite')
    suite_parser.add_argument('name', choices=sorted(SUITES) + ['full'])
    suite_parser.set_defaults(handler=command_suite)

    sweep_parser = commands.add_parser('sweep', parents=[common], help='tabulate Hopf data over an (m, l) grid')
    sweep_parser.add_argument('--m', type=parse_range, default=(0.0, 1.0), help='m range, a:b')
    sweep_parser.add_argument('--l', type=parse_range, default=(0.0, 2.0), help='l range, a:b')
    sweep_parser.add_argument('--steps', type=parse_steps, default=(5, 5), help='grid steps, N or NxM')
    sweep_parser.add_argument('--verify', action='store_true', help='check each row on the lifted cylinder')
    sweep_parser.set_defaults(handler=command_sweep)

    residual_parser = commands.add_parser('residual', parents=[common], help='classify a single surface')
    residual_parser.add_argument('--surface', choices=SURFACE_CHOICES, default='plane')
    residual_parser.add_argument('--model', choices=sorted(MODEL_CHOICES), default='bcv')
    residual_parser.add_argument('--m', type=float, default=1.0)
    residual_parser.add_argument('--l', type=float, default=0.0)
    residual_parser.add_argument('--c', type=float, default=1.0)
    residual_parser.add_argument(
        '--radius', type=float,
        help='sphere or cylinder radius (default pi/4), or the chart radius of the Hopf base circle',
    )
    residual_parser.add_argument('--curve', choices=CURVE_CHOICES, default='circle', help='base curve of the Hopf cylinder')
    residual_parser.add_argument('--kappa', type=float, help='geodesic curvature of the base circle (default critical)')
    residual_parser.add_argument('--angle', type=float, default=0.0, help='direction of the base line')
    residual_parser.add_argument('--radius-scale', type=float, default=1.0, help='perturbs the Hopf base circle')
    residual_parser.add_argument('--offset', type=float, default=0.0)
    residual_parser.add_argument('--axis', choices=PLANE_AXES, default='z')
    residual_parser.set_defaults(handler=command_residual)
    return parser


def configure(args):
    if args.config:
        settings.load_file(args.config)
    settings.override(
        grid=args.grid,
        tol=args.tol,
        margin_floor=args.margin_floor,
        fd_step=args.fd_step,
        seed=args.seed,
        format=args.format,
        log_level=args.log_level,
        workers=args.workers,
    )
    logging.basicConfig(level=settings.LOG_LEVEL, format='%(levelname)s %(name)s: %(message)s')


def summarize(report):
    passed = len(report.checks) - len(report.failures)
    print('{}: {}/{} checks passed in {}'.format(
        report.suite, passed, len(report.checks), natural_duration(report.duration),
    ), file=sys.stderr)
    for check in report.failures:
        print('  FAILED {}: {} ({:.3e} vs {:.1e})'.format(check.id, check.desc, check.residual, check.tol),
              file=sys.stderr)


def command_suite(args):
    report = run_suite(args.name)
    write_report(report, args.out)
    summarize(report)
    return EXIT_PASS if report.passed else EXIT_FAIL


def command_sweep(args):
    started = time.perf_counter()
    config = SuiteConfig.from_settings()
    rows = sweep(args.m, args.l, args.steps, args.out, verify=args.verify, config=config)
    print('sweep: {} rows in {}'.format(len(rows), natural_duration(time.perf_counter() - started)), file=sys.stderr)
    failed = mismatches(rows)
    for row in failed:
        print('  MISMATCH m={m:g} l={l:g}: {verdict} vs {numeric_verdict}'.format(**row), file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_PASS


def build_curve(args):
    """The Hopf base curve named by ``--curve``."""
    if args.curve == 'line':
        return line(args.m, angle=args.angle)
    if args.radius is not None:
        radius = args.radius
    else:
        kappa = critical_curvature(args.m, args.l) if args.kappa is None else args.kappa
        radius = circle_for_kg(args.m, kappa)
    return circle(args.m, args.radius_scale * radius)


def build_surface(args):
    if args.surface == 'hopf':
        return lift_cylinder(args.m, args.l, build_curve(args))
    radius = DEFAULT_RADIUS if args.radius is None else args.radius
    kind = MODEL_CHOICES[args.model]
    params = {BCV: {'m': args.m, 'l': args.l}, SOL: {}, SPACE_FORM: {'c': args.c}}[kind]
    model = make_model(kind, params)
    if args.surface == 'plane':
        return plane(model, args.axis, args.offset)
    if args.surface == 'sphere':
        return geodesic_sphere(model, radius)
    if args.surface == 'cylinder':
        return vertical_cylinder(model, radius)
    raise ConfigError('unknown surface {!r}'.format(args.surface))


def command_residual(args):
    started = time.perf_counter()
    config = SuiteConfig.from_settings()
    patch = build_surface(args)
    result = verdict(patch, grid=config.grid, tol=config.tol, margin_floor=config.margin_floor, step=config.fd_step)

    desc = '{} in {!r}'.format(patch.name, patch.model)
    for field in ('chn_max', 'csl_max'):
        value = getattr(result, field)
        if value is not None:
            desc += ', {} {:.3e}'.format(field, value)
    checks = [
        upper('normal', 'max |Delta H - H |A|^2 + H Ric(xi, xi)|', result.max_normal_residual, config.tol),
        upper('tangential', 'max |2 A(grad H) + grad H^2 - 2 H (Ric xi)^T|', result.max_tangential_residual,
              config.tol),
        verdict_check('verdict', desc, result, (MINIMAL, PROPER_BIHARMONIC), config.tol),
    ]
    config_echo = dict(config.as_dict(), surface=patch.name, model=repr(patch.model))
    report = SuiteReport('residual', config_echo, checks, time.perf_counter() - started)
    write_report(report, args.out)
    summarize(report)
    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        configure(args)
        server.start()
        exit_code = args.handler(args)
    except BiharmonicaError as e:
        print('biharmonica: error: {}'.format(e), file=sys.stderr)
        exit_code = EXIT_ERROR
    except KeyboardInterrupt:
        exit_code = EXIT_FAIL
    server.stop_all()
    return exit_code


if __name__ == '__main__':
    sys.exit(main())
