from biharmonica.geometry.connection import (
    CurvatureData,
    christoffels_at,
    covariant_derivative_at,
    curvature_at,
    frame_brackets_at,
    frame_connection_at,
    lie_bracket_at,
    lie_bracket_frame_at,
)
from biharmonica.geometry.curvature import (
    frame_ricci_at,
    frame_riemann_at,
    ricci_at,
    ricci_operator_at,
    riemann_at,
    sectional_curvature,
)
from biharmonica.geometry.models import (
    BCV,
    MODEL_KINDS,
    SOL,
    SPACE_FORM,
    ChartPoint,
    MetricModel,
    TangentVector,
    frame_coefficients,
    make_model,
    metric_at,
    orthonormal_frame_at,
    thurston_geometry,
)
