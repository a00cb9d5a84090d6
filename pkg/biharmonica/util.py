import datetime

import humanize
import numpy as np
from scipy.stats import qmc

from biharmonica.exceptions import ConfigError, DomainError
from biharmonica.settings import GRID_PATTERN, settings


def parse_grid(grid=None):
    # In case the setting value changes.
    if grid is None:
        grid = settings.GRID
    if isinstance(grid, (tuple, list)):
        nu, nv = grid
    else:
        match = GRID_PATTERN.match(str(grid))
        if match is None:
            raise ConfigError('grid must look like NxM, got {!r}'.format(grid))
        nu, nv = int(match.group(1)), int(match.group(2))
    if nu < 1 or nv < 1:
        raise DomainError('empty grid {}x{}'.format(nu, nv))
    return int(nu), int(nv)


def halton_points(count, lower, upper, seed=None):
    """``count`` scrambled Halton points in the box [lower, upper]."""
    if seed is None:
        seed = int(settings.SEED)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    sampler = qmc.Halton(d=lower.shape[0], scramble=True, seed=seed)
    return qmc.scale(sampler.random(count), lower, upper)


def interior_linspace(lo, hi, count, margin):
    """``count`` points in [lo + margin, hi - margin]; the midpoint if count is 1."""
    lo, hi = lo + margin, hi - margin
    if count == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo, hi, count)


def natural_duration(seconds):
    return humanize.precisedelta(datetime.timedelta(seconds=seconds), minimum_unit='milliseconds', format='%0.0f')
