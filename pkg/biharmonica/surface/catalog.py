import math

from biharmonica.exceptions import AmbientMismatchError, DomainError
from biharmonica.geometry import SPACE_FORM, jets
from biharmonica.surface.patch import SurfacePatch

PLANE_AXES = ('x', 'y', 'z')
# Polar margin of the sphere parametrisation, keeps sin(v) away from 0.
SPHERE_POLAR_MARGIN = 0.35


def plane(model, axis='z', offset=0.0, half_width=0.5):
    """The coordinate plane {axis = offset}, oriented along +axis."""
    if axis not in PLANE_AXES:
        raise DomainError('plane axis must be one of {}, got {!r}'.format(', '.join(PLANE_AXES), axis))
    c = float(offset)
    immersion = {
        'z': lambda u, v: (u, v, c),
        'x': lambda u, v: (c, u, v),
        'y': lambda u, v: (v, c, u),
    }[axis]
    span = (-half_width, half_width)
    return SurfacePatch(model, immersion, span, span, name='plane {}={:g}'.format(axis, c))


def chart_radius(c, radius):
    """Chart radius of the geodesic sphere of intrinsic radius ``radius`` about the origin."""
    if c > 0:
        k = math.sqrt(c)
        if not radius * k < math.pi:
            raise DomainError('geodesic radius {:g} reaches the antipode of S3 with c={:g}'.format(radius, c))
        return 2.0 / k * math.tan(0.5 * k * radius)
    if c < 0:
        k = math.sqrt(-c)
        return 2.0 / k * math.tanh(0.5 * k * radius)
    return radius


def geodesic_sphere(model, radius):
    """The geodesic sphere about the origin of a space-form chart.

    The parametrisation (azimuth u, polar angle v) gives the inward normal,
    so H = cot(radius) > 0 in the unit 3-sphere.
    """
    if model.kind != SPACE_FORM:
        raise AmbientMismatchError('geodesic spheres are built in SpaceFormChart models, not {!r}'.format(model))
    if not radius > 0:
        raise DomainError('sphere radius must be positive, got {!r}'.format(radius))
    r = chart_radius(model.c, radius)

    def immersion(u, v):
        s = jets.sin(v)
        return (r * s * jets.cos(u), r * s * jets.sin(u), r * jets.cos(v))

    return SurfacePatch(
        model,
        immersion,
        (0.0, 2.0 * math.pi),
        (SPHERE_POLAR_MARGIN, math.pi - SPHERE_POLAR_MARGIN),
        name='geodesic sphere r={:g}'.format(radius),
    )


def vertical_cylinder(model, radius, center=(0.0, 0.0), height=0.5):
    """{(x - x0)^2 + (y - y0)^2 = radius^2} with the outward coordinate normal."""
    if not radius > 0:
        raise DomainError('cylinder radius must be positive, got {!r}'.format(radius))
    x0, y0 = center

    def immersion(u, v):
        return (x0 + radius * jets.cos(u), y0 + radius * jets.sin(u), v)

    return SurfacePatch(
        model,
        immersion,
        (0.0, 2.0 * math.pi),
        (-height, height),
        name='vertical cylinder r={:g}'.format(radius),
    )
