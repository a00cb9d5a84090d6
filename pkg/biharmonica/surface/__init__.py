from biharmonica.surface.calculus import (
    AdaptedFrame,
    ShapeReport,
    adapted_frame,
    codazzi_umbilic_sides,
    first_fundamental_form,
    intrinsic_gradient,
    laplace_beltrami,
    mean_curvature_field,
    parameter_gradient,
    shape_report,
    unit_normal,
)
from biharmonica.surface.catalog import geodesic_sphere, plane, vertical_cylinder
from biharmonica.surface.patch import ImmersionJet, SurfacePatch, immersion_jet
