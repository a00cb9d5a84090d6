import logging
import math

import numpy as np

from biharmonica.biharmonic import verdict
from biharmonica.exceptions import ConfigError
from biharmonica.geometry import BCV, make_model, thurston_geometry
from biharmonica.hopf import hopf_cylinder, hopf_invariants
from biharmonica.suites.report import resolve_output, write_rows

logger = logging.getLogger(__name__)

PROPER = 'proper_biharmonic'
MINIMAL_ONLY = 'minimal-only'
NOT_BIHARMONIC = 'not_biharmonic'

SWEEP_FIELDS = [
    'm', 'l', 'window', 'geometry', 'kappa_g', 'tau_g', 'mean_curvature', 'norm_a_squared', 'radius',
    'verdict', 'numeric_verdict', 'max_residual',
]
# |4m - l^2| at or below this counts as the boundary of the properness window.
BOUNDARY_TOLERANCE = 1e-12


def _check_range(name, bounds):
    try:
        lo, hi = (float(b) for b in bounds)
    except (TypeError, ValueError):
        raise ConfigError('{} must be a pair of numbers, got {!r}'.format(name, bounds))
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigError('{} must be finite, got {!r}'.format(name, bounds))
    return lo, hi


def _check_steps(steps):
    if isinstance(steps, int):
        steps = (steps, steps)
    try:
        nm, nl = (int(s) for s in steps)
    except (TypeError, ValueError):
        raise ConfigError('steps must be an integer or a pair of integers, got {!r}'.format(steps))
    if nm < 1 or nl < 1:
        raise ConfigError('steps must be at least 1, got {!r}'.format(steps))
    return nm, nl


def sweep_row(m, l, verify=False, config=None):
    """Closed-form Hopf data of BCV(m, l), optionally checked on the lifted cylinder."""
    window = 4.0 * m - l * l
    row = {
        'm': m,
        'l': l,
        'window': window,
        'geometry': thurston_geometry(make_model(BCV, m=m, l=l)),
        'tau_g': -0.5 * l,
    }
    if window > BOUNDARY_TOLERANCE:
        kappa, row['verdict'] = math.sqrt(window), PROPER
    elif window >= -BOUNDARY_TOLERANCE:
        kappa, row['verdict'] = 0.0, MINIMAL_ONLY
    else:
        row['verdict'] = NOT_BIHARMONIC
        return row

    invariants = hopf_invariants(m, l, kappa, radius=m > 0)
    row.update(
        kappa_g=invariants.kappa_g,
        mean_curvature=invariants.mean_curvature,
        norm_a_squared=invariants.norm_a_squared,
        radius=invariants.radius,
    )
    # the base circle needs a positively curved base
    if verify and m > 0:
        kwargs = {}
        if config is not None:
            kwargs = dict(grid=config.grid, tol=config.tol, margin_floor=config.margin_floor, step=config.fd_step)
        result = verdict(hopf_cylinder(m, l, kappa), **kwargs)
        row.update(numeric_verdict=result.classification, max_residual=result.max_residual)
    return row


def mismatches(rows):
    """Verified rows whose numeric verdict disagrees with the closed form."""
    expected = {PROPER: PROPER, MINIMAL_ONLY: 'minimal'}
    return [
        row for row in rows
        if row.get('numeric_verdict') is not None and row['numeric_verdict'] != expected[row['verdict']]
    ]


def sweep_table(m_range, l_range, steps, verify=False, config=None):
    m0, m1 = _check_range('m range', m_range)
    l0, l1 = _check_range('l range', l_range)
    nm, nl = _check_steps(steps)
    rows = []
    for m in np.linspace(m0, m1, nm):
        for l in np.linspace(l0, l1, nl):
            rows.append(sweep_row(float(m), float(l), verify, config))
    logger.info('Swept %d (m, l) cells, %d inside the properness window',
                len(rows), sum(row['verdict'] == PROPER for row in rows))
    return rows


def sweep(m_range, l_range, steps, out_path=None, fmt=None, verify=False, config=None):
    rows = sweep_table(m_range, l_range, steps, verify, config)
    path, fmt = resolve_output('sweep', out_path, fmt)
    document = {
        'm_range': list(_check_range('m range', m_range)),
        'l_range': list(_check_range('l range', l_range)),
        'steps': list(_check_steps(steps)),
        'verify': bool(verify),
    }
    write_rows(path, fmt, rows, SWEEP_FIELDS, document)
    return rows
