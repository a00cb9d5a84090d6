from biharmonica.hopf.curves import (
    PlaneCurve,
    base_factor,
    base_metric,
    circle,
    line,
    reparametrize_by_arclength,
)
from biharmonica.hopf.cylinders import (
    HopfInvariants,
    Properness,
    base_geodesic_curvature,
    base_sectional_curvature,
    circle_for_kg,
    critical_curvature,
    curve_ode_residual,
    fiber_torsion,
    hopf_cylinder,
    hopf_invariants,
    horizontal_lift,
    lift_cylinder,
    properness_conditions,
)
