import logging
from collections import namedtuple
from functools import partial

from biharmonica.biharmonic.residual import interior_grid, residual_full, resolve_tolerance
from biharmonica.server import server
from biharmonica.settings import settings
from biharmonica.util import parse_grid

logger = logging.getLogger(__name__)

MINIMAL = 'minimal'
PROPER_BIHARMONIC = 'proper_biharmonic'
NOT_BIHARMONIC = 'not_biharmonic'
CLASSIFICATIONS = (MINIMAL, PROPER_BIHARMONIC, NOT_BIHARMONIC)


class Verdict(namedtuple('Verdict', (
    'classification max_normal_residual max_tangential_residual max_mean_curvature '
    'min_mean_curvature max_gradient margin points chn_max csl_max'
))):
    """Max-over-grid summary of ``residual_full``.

    ``margin`` is the distance of the deciding quantity from its threshold,
    always nonnegative.
    """
    __slots__ = ()

    @property
    def max_residual(self):
        return max(self.max_normal_residual, self.max_tangential_residual)

    @property
    def is_biharmonic(self):
        return self.classification != NOT_BIHARMONIC


def _triple_max(residuals, field):
    triples = [getattr(r, field) for r in residuals if getattr(r, field) is not None]
    if not triples:
        return None
    return max(abs(x) for triple in triples for x in triple)


def classify(max_residual, max_h, min_h, tol, margin_floor):
    """(classification, margin) from the grid maxima."""
    if max_h <= tol:
        return MINIMAL, tol - max_h
    if max_residual <= tol and min_h > margin_floor:
        return PROPER_BIHARMONIC, min(tol - max_residual, min_h - margin_floor)
    if max_residual > tol:
        return NOT_BIHARMONIC, max_residual - tol
    return NOT_BIHARMONIC, margin_floor - min_h


def verdict(patch, grid=None, tol=None, margin_floor=None, step=None):
    tol = resolve_tolerance(tol)
    if margin_floor is None:
        margin_floor = float(settings.MARGIN_FLOOR)
    points = interior_grid(patch, parse_grid(grid), step)

    residuals = server.map(partial(residual_full, patch, step=step), points)

    heights = [abs(r.mean_curvature) for r in residuals]
    max_normal = max(abs(r.normal_residual) for r in residuals)
    max_tangential = max(r.tangential_residual for r in residuals)
    classification, margin = classify(max(max_normal, max_tangential), max(heights), min(heights), tol, margin_floor)
    result = Verdict(
        classification=classification,
        max_normal_residual=max_normal,
        max_tangential_residual=max_tangential,
        max_mean_curvature=max(heights),
        min_mean_curvature=min(heights),
        max_gradient=max(r.gradient_norm for r in residuals),
        margin=margin,
        points=len(points),
        chn_max=_triple_max(residuals, 'chn_triple'),
        csl_max=_triple_max(residuals, 'csl_triple'),
    )
    logger.info('%s: %s (max residual %.3e, |H| in [%.3e, %.3e])',
                patch.name, classification, result.max_residual, result.min_mean_curvature,
                result.max_mean_curvature)
    return result
