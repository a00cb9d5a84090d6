from biharmonica.biharmonic.residual import (
    BiharmonicResidual,
    RicciIdentity,
    chn_residual,
    cmc_defect,
    csl_residual,
    interior_grid,
    residual_cmc,
    residual_full,
    resolve_tolerance,
    ricci_normal_identity,
    umbilic_reduction_residual,
)
from biharmonica.biharmonic.verdict import (
    CLASSIFICATIONS,
    MINIMAL,
    NOT_BIHARMONIC,
    PROPER_BIHARMONIC,
    Verdict,
    classify,
    verdict,
)
