"""Cross approximation with complete pivoting and its companion oracles.

Skeleton low-rank approximation of matrices and bivariate functions, exact
brute-force maximum-volume search, a-priori error-bound evaluation, a
deterministic matrix gallery, and verification batteries.
"""

from .bounds import (
    BoundReport,
    GammaBracket,
    GoreinovReport,
    MinPivotReport,
    bound_report,
    bound_report_from_dict,
    gamma_bracket,
    gamma_last,
    goreinov_report,
    min_pivot_check,
    numerical_rank,
    rhs_bound,
    wilkinson_bound,
    wilkinson_majorant,
)
from .core import (
    MatrixClass,
    as_matrix,
    classify,
    inf_to_one_norm,
    max_norm,
    read_matrix,
    singular_values,
    write_matrix,
)
from .cross import (
    DIAGONAL,
    FULL,
    CrossResult,
    GrowthReport,
    LduDiagnostics,
    cross_approximate,
    ldu_diagnostics,
    lu_factors,
    realized_growth,
    skeleton_error,
    skeleton_residual,
)
from .exceptions import (
    AnalyticityError,
    CapabilityError,
    CrossvolError,
    DimensionError,
    NumericalError,
    PreconditionError,
)
from .funcross import (
    BernsteinEllipse,
    FunctionCrossResult,
    Grid,
    build_interpolation_matrix,
    chebyshev_points,
    ellipse_sup,
    function_bound,
    function_cross,
    get_function,
)
from .maxvol import (
    PrincipalOptimality,
    VolumeResult,
    brute_force_maxvol,
    check_principal_optimality,
    column_volume,
    volume,
)

__version__ = "0.1.0"


def __getattr__(name):
    # sklearn import is slow; pull the estimator lazily.
    if name == "CrossApproximator":
        from .estimator import CrossApproximator

        return CrossApproximator
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
