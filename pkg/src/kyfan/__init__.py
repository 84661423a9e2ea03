"""Ky Fan norm separability criteria and entanglement lower bounds for bipartite states."""

from .bounds import (
    BoundReport,
    Measure,
    concurrence_lower_bound,
    cren_lower_bound,
    detection_threshold,
    pure_concurrence,
    pure_cren,
    schmidt_coefficients,
)
from .criteria import (
    Criterion,
    CriterionParams,
    CriterionVerdict,
    build_M,
    ccnr_test,
    enhanced_realignment_test,
    kyfan_criterion_test,
    optimize_params,
    ppt_test,
)
from .estimators import EntanglementDetector, KyFanParameterSearch, LowerBoundTransformer
from .linalg import (
    BipartiteDensityMatrix,
    NumericalError,
    PureState,
    ValidationError,
    ky_fan_norm,
    partial_trace,
    partial_transpose,
    realign,
    vec,
)
from .states import (
    ChessboardParams,
    SchmidtSpectrum,
    chessboard_state,
    mix_white_noise,
    random_density,
    random_separable,
    read_state,
    tiles_ppt_state,
    write_state,
)

__version__ = "0.1.0"
