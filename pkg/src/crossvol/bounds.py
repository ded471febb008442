"""A-priori error bounds for completely pivoted cross approximation.

Evaluates the right-hand sides of the known skeleton-error estimates (the
Goreinov-Tyrtyshnikov quasi-optimality bound, the general ``4^m rho_m``
bound, its SPSD / diagonally dominant / doubly dominant refinements, and the
mixed-norm variant) and compares them against achieved errors.

The true complete-pivoting growth factor is a supremum over all matrices and
is not computable; wherever a bound consumes it, the checks substitute a
valid upper bound instead: Wilkinson's classical estimate in general, 1 for
SPSD inputs, 2 for diagonally dominant inputs.  Every reported inequality is
therefore a theorem consequence, never an empirical guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cross as _cross
from .core import (
    SIGN_ENUM_CAP,
    MatrixClass,
    as_matrix,
    classify,
    inf_to_one_norm,
    singular_values,
)
from .exceptions import DimensionError, NumericalError, PreconditionError
from .maxvol import DEFAULT_PAIR_CAP, brute_force_maxvol

BOUND_KINDS = ("goreinov", "general", "mixed", "spsd", "dd", "doubly_dd")

NUMERICAL_RANK_RTOL = 1e-10


def wilkinson_bound(k: int) -> float:
    """Wilkinson's growth-factor bound ``sqrt(k+1) * sqrt(prod_{j=2}^{k+1} j^{1/(j-1)})``.

    ``k = 0`` returns 1 by convention (no elimination step, no growth).
    Known not to be attained for ``k >= 3``, but valid for every matrix.
    """
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    if k == 0:
        return 1.0
    log_prod = sum(math.log(j) / (j - 1) for j in range(2, k + 2))
    return math.exp(0.5 * math.log(k + 1) + 0.5 * log_prod)


def wilkinson_majorant(k: int) -> float:
    """Closed-form majorant ``2 sqrt(k+1) (k+1)^(ln(k+1)/4)`` of :func:`wilkinson_bound`."""
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    if k == 0:
        return 1.0
    return 2.0 * math.sqrt(k + 1) * (k + 1) ** (math.log(k + 1) / 4.0)


def rhs_bound(kind: str, m: int, sigma_next: float, rho: float = 1.0,
              gamma: float | None = None) -> float:
    """Right-hand side of a named skeleton-error bound after ``m`` steps.

    ``sigma_next`` is the ``(m+1)``-th singular value; ``rho`` is a growth
    factor upper bound (consumed by ``general`` and ``mixed`` only); ``gamma``
    is a max-norm rank-``m`` approximation distance (``mixed`` only).
    """
    if sigma_next < 0:
        raise ValueError("sigma_next must be nonnegative")
    if kind == "goreinov":
        return (m + 1) * sigma_next
    if kind == "general":
        return 4.0**m * rho * sigma_next
    if kind == "mixed":
        if gamma is None:
            raise ValueError("the mixed bound needs gamma")
        return 2.0 ** (2 * m + 1) * rho * gamma
    if kind == "spsd":
        return 4.0**m * sigma_next
    if kind == "dd":
        return (m + 1) * 2.0 ** (m + 1) * sigma_next
    if kind == "doubly_dd":
        return 2.0 * (m + 1) ** 2 * sigma_next
    raise ValueError(f"unknown bound kind {kind!r}; choose from {', '.join(BOUND_KINDS)}")


def gamma_last(a, cap: int = SIGN_ENUM_CAP) -> float:
    """Max-norm distance from an invertible matrix to the singular matrices.

    Equals ``1 / ||A^{-1}||`` in the inf->1 operator norm, which the core
    module evaluates exactly by sign-vector enumeration (hence the cap).
    """
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"needs a square matrix, got {arr.shape}")
    try:
        inv = np.linalg.inv(arr)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("matrix is singular") from exc
    return 1.0 / inf_to_one_norm(inv, cap=cap)


@dataclass(frozen=True)
class GammaBracket:
    """Bracket on the max-norm distance to the rank-``k`` matrices.

    ``lower = sigma_{k+1} / n`` and ``upper = sigma_{k+1}`` always hold;
    ``exact`` is available only for ``k = n - 1``, where the distance equals
    the reciprocal inf->1 norm of the inverse.
    """

    k: int
    lower: float
    upper: float
    exact: float | None = None


def gamma_bracket(a, k: int, exact_cap: int = SIGN_ENUM_CAP) -> GammaBracket:
    arr = as_matrix(a)
    n, m = arr.shape
    if n != m:
        raise DimensionError(f"needs a square matrix, got {arr.shape}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"rank k={k} out of range [0, {n - 1}]")
    upper = float(singular_values(arr)[k])
    exact = None
    if k == n - 1 and n <= exact_cap:
        try:
            exact = gamma_last(arr, cap=exact_cap)
        except NumericalError:
            exact = None
    return GammaBracket(k=k, lower=upper / n, upper=upper, exact=exact)


@dataclass(frozen=True)
class MinPivotReport:
    """Check of ``min |p_j| <= F(class, m) * sigma_{m+1}`` for one run."""

    m: int
    min_pivot: float
    sigma_next: float
    factor: float
    rhs: float
    slack: float
    holds: bool


def pivot_factor(mclass: MatrixClass, m: int) -> float:
    """Class-dependent factor bounding ``min |p_j| / sigma_{m+1}``.

    ``(m+1)^2`` for doubly dominant matrices, ``(m+1) 2^m`` for dominant
    ones, ``4^m`` otherwise; each comes from the triangular-inverse norm
    estimates behind the corresponding error bound.
    """
    if mclass.is_doubly_dd:
        return float((m + 1) ** 2)
    if mclass.is_dd:
        return (m + 1) * 2.0**m
    return 4.0**m


def min_pivot_check(a, result: _cross.CrossResult,
                    mclass: MatrixClass | None = None) -> MinPivotReport:
    """Verify the pivot-minimum chain against the next singular value.

    Needs the ``m`` performed pivots plus the lookahead pivot; the smallest
    of those ``m+1`` magnitudes is bounded by ``F(class, m) * sigma_{m+1}``.
    """
    arr = as_matrix(a)
    if result.lookahead is None:
        raise PreconditionError("result lacks the lookahead pivot; need m+1 pivot values")
    if mclass is None:
        mclass = classify(arr)
    m = result.steps_completed
    values = np.abs(np.asarray(result.all_pivot_values))
    min_pivot = float(values.min())
    sigma_next = float(singular_values(arr)[m])
    factor = pivot_factor(mclass, m)
    rhs = factor * sigma_next
    return MinPivotReport(
        m=m,
        min_pivot=min_pivot,
        sigma_next=sigma_next,
        factor=factor,
        rhs=rhs,
        slack=rhs - min_pivot,
        holds=bool(min_pivot <= rhs * (1.0 + 1e-9)),
    )


@dataclass(frozen=True)
class BoundReport:
    """Achieved skeleton error of one run against every applicable bound."""

    matrix_class: MatrixClass
    m: int
    achieved_error: float
    sigma_next: float
    min_pivot: float
    bounds: dict[str, float]
    ratios: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "matrix_class": self.matrix_class.to_dict(),
            "m": self.m,
            "achieved_error": self.achieved_error,
            "sigma_next": self.sigma_next,
            "min_pivot": self.min_pivot,
            "bounds": dict(sorted(self.bounds.items())),
            "ratios": dict(sorted(self.ratios.items())),
        }


def bound_report_from_dict(d: dict) -> BoundReport:
    return BoundReport(
        matrix_class=MatrixClass(**d["matrix_class"]),
        m=int(d["m"]),
        achieved_error=float(d["achieved_error"]),
        sigma_next=float(d["sigma_next"]),
        min_pivot=float(d["min_pivot"]),
        bounds={k: float(v) for k, v in d["bounds"].items()},
        ratios={k: float(v) for k, v in d["ratios"].items()},
    )


def numerical_rank(a, rtol: float = NUMERICAL_RANK_RTOL) -> int:
    s = singular_values(a)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def bound_report(a, m: int, exact_cap: int = SIGN_ENUM_CAP) -> BoundReport:
    """Run cross approximation and compare its error against every bound.

    The growth factor is replaced by :func:`wilkinson_bound` in the general
    and mixed bounds; the class-restricted bounds carry their own constants.
    The mixed bound uses the upper gamma bracket, except after a full
    ``n-1``-step sweep where the exact last-rank distance is available.

    Requires ``m`` below the numerical rank, so the next singular value is
    meaningfully positive and every ratio is well defined.
    """
    arr = as_matrix(a)
    n, n2 = arr.shape
    if n != n2:
        raise DimensionError(f"bound report needs a square matrix, got {arr.shape}")
    rank = numerical_rank(arr)
    if m >= rank:
        raise PreconditionError(f"m={m} must stay below the numerical rank {rank}")

    mclass = classify(arr)
    result = _cross.cross_approximate(arr, m, strategy=_cross.FULL)
    achieved = _cross.skeleton_error(arr, result)
    sigma_next = float(singular_values(arr)[m])
    min_pivot = float(np.abs(np.asarray(result.all_pivot_values)).min())

    rho = wilkinson_bound(m)
    bracket = gamma_bracket(arr, m, exact_cap=exact_cap)
    gamma = bracket.exact if (m == n - 1 and bracket.exact is not None) else bracket.upper

    bounds = {
        "general": rhs_bound("general", m, sigma_next, rho=rho),
        "mixed": rhs_bound("mixed", m, sigma_next, rho=rho, gamma=gamma),
    }
    if mclass.is_spsd:
        bounds["spsd"] = rhs_bound("spsd", m, sigma_next)
    if mclass.is_dd:
        bounds["dd"] = rhs_bound("dd", m, sigma_next)
    if mclass.is_doubly_dd:
        bounds["doubly_dd"] = rhs_bound("doubly_dd", m, sigma_next)

    ratios = {name: achieved / value for name, value in bounds.items()}
    return BoundReport(
        matrix_class=mclass,
        m=m,
        achieved_error=achieved,
        sigma_next=sigma_next,
        min_pivot=min_pivot,
        bounds=bounds,
        ratios=ratios,
    )


@dataclass(frozen=True)
class GoreinovReport:
    """Quasi-optimality of the maximum-volume skeleton: error vs ``(k+1) sigma_{k+1}``."""

    k: int
    achieved_error: float
    rhs: float
    ratio: float
    row_set: tuple[int, ...]
    col_set: tuple[int, ...]


def goreinov_report(a, k: int, pair_cap: int = DEFAULT_PAIR_CAP) -> GoreinovReport:
    """Skeleton error of the exact maximum-volume submatrix against its bound.

    This bound presumes the maximum-volume block, so it is evaluated through
    the brute-force oracle rather than the greedy pivot selection.
    """
    arr = as_matrix(a)
    n = arr.shape[0]
    if k >= min(arr.shape):
        raise DimensionError(f"k={k} leaves no next singular value for a {arr.shape} matrix")
    best = brute_force_maxvol(arr, k, principal_only=False, pair_cap=pair_cap)
    if best.volume == 0.0:
        raise NumericalError(f"every {k} x {k} submatrix is singular; rank below {k}")
    residual = _cross.skeleton_residual(arr, best.row_set, best.col_set)
    achieved = float(np.abs(residual).max())
    rhs = rhs_bound("goreinov", k, float(singular_values(arr)[k]))
    ratio = achieved / rhs if rhs > 0 else (0.0 if achieved == 0.0 else math.inf)
    return GoreinovReport(
        k=k,
        achieved_error=achieved,
        rhs=rhs,
        ratio=ratio,
        row_set=best.row_set,
        col_set=best.col_set,
    )
