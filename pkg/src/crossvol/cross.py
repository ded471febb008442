"""Cross approximation with complete pivoting.

One step picks the remaining entry of maximum modulus as pivot and subtracts
the corresponding rank-1 cross from the residual, which is exactly one step
of LU elimination with complete pivoting.  After ``m`` steps the residual is
the Schur complement of the selected ``m x m`` block, and the skeleton
``A[:, J] A[I, J]^{-1} A[I, :]`` reproduces ``A`` up to that Schur complement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix, classify, max_norm
from .exceptions import DimensionError, NumericalError, PreconditionError

FULL = "full"
DIAGONAL = "diagonal"

TERMINATION_RANK = "requested_rank"
TERMINATION_BREAKDOWN = "breakdown"

DEFAULT_BREAKDOWN_TOL = 1e-12


@dataclass(frozen=True)
class CrossResult:
    """Pivot record of a completely pivoted cross approximation run.

    ``pivots`` holds the performed steps as ``(row, col, value)`` triples in
    selection order; ``row_indices`` / ``col_indices`` repeat the index
    sequences.  ``lookahead`` is the pivot candidate found by one extra
    search after the last performed step: its absolute value equals the
    max-norm of the residual, reported as ``residual_max``.
    """

    pivots: tuple[tuple[int, int, float], ...]
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    steps_completed: int
    termination: str
    residual_max: float
    lookahead: tuple[int, int, float] | None = None

    @property
    def pivot_values(self) -> tuple[float, ...]:
        return tuple(p for _, _, p in self.pivots)

    @property
    def all_pivot_values(self) -> tuple[float, ...]:
        """Performed pivots followed by the lookahead value, when present."""
        if self.lookahead is None:
            return self.pivot_values
        return self.pivot_values + (self.lookahead[2],)


@dataclass(frozen=True)
class GrowthReport:
    """Realized pivot growth ratios of one run."""

    growth: float
    lookahead_ratio: float


@dataclass(frozen=True)
class LduDiagnostics:
    """LDU factors and conditioning diagnostics of a complete pivot sweep.

    ``L`` and ``U`` are unit lower/upper triangular in pivot-permuted order,
    ``D`` is the diagonal of pivots, so ``L @ D @ U`` reconstructs the
    permuted matrix.  ``r_m`` is the ratio between the last pivot magnitude
    and the smallest singular value, i.e. ``|p_n| * ||A^{-1}||``.
    """

    L: np.ndarray
    D: np.ndarray
    U: np.ndarray
    norm_L_inv: float
    norm_U_inv: float
    norm_D_inv: float
    r_m: float
    realized_growth: float
    interchanges_performed: bool
    row_order: tuple[int, ...]
    col_order: tuple[int, ...]


def _eliminate(r: np.ndarray, i: int, j: int) -> float:
    """Subtract the pivot cross ``r[:, j] r[i, :] / r[i, j]`` from ``r`` in place.

    The pivot row and column are zeroed explicitly afterwards: they vanish in
    exact arithmetic and later pivot searches must not see their round-off.
    """
    p = r[i, j]
    r -= np.outer(r[:, j] / p, r[i, :])
    r[i, :] = 0.0
    r[:, j] = 0.0
    return float(p)


def _search_full(r: np.ndarray, row_ok: np.ndarray, col_ok: np.ndarray) -> tuple[int, int]:
    masked = np.abs(r)
    masked[~row_ok, :] = -1.0
    masked[:, ~col_ok] = -1.0
    # argmax returns the first flat maximum, i.e. the lexicographically
    # smallest (row, col) among ties.
    flat = int(np.argmax(masked))
    return divmod(flat, r.shape[1])


def _search_diagonal(r: np.ndarray, row_ok: np.ndarray) -> tuple[int, int]:
    masked = np.abs(np.diagonal(r)).copy()
    masked[~row_ok] = -1.0
    i = int(np.argmax(masked))
    return i, i


def cross_approximate(a, m: int, strategy: str = FULL,
                      breakdown_tol: float = DEFAULT_BREAKDOWN_TOL) -> CrossResult:
    """Run ``m`` steps of cross approximation with complete pivoting.

    Parameters
    ----------
    a : array_like
        Input matrix; it is never mutated.
    m : int
        Number of pivot steps, ``1 <= m <= min(n_rows, n_cols)``.
    strategy : {"full", "diagonal"}, optional
        ``"full"`` searches the whole residual for the entry of maximum
        modulus.  ``"diagonal"`` searches the diagonal only, which is
        admissible precisely for SPSD and diagonally dominant matrices,
        where the maximum always sits on the diagonal.
    breakdown_tol : float, optional
        Relative breakdown threshold: the run stops early when the best
        pivot candidate does not exceed ``breakdown_tol * max_norm(a)``.

    Returns
    -------
    CrossResult
        Pivot record, termination reason, and the residual max-norm obtained
        from one lookahead pivot search after the last performed step.

    Notes
    -----
    Ties in the pivot search are broken by the lexicographically smallest
    ``(row, col)`` pair, which makes runs reproducible and keeps matrices
    with constant maximal modulus from being permuted.
    """
    arr = as_matrix(a)
    n_rows, n_cols = arr.shape
    if not 1 <= m <= min(n_rows, n_cols):
        raise DimensionError(f"step count m={m} out of range [1, {min(n_rows, n_cols)}]")
    if strategy == DIAGONAL:
        if n_rows != n_cols:
            raise PreconditionError("diagonal pivoting needs a square matrix")
        cls = classify(arr)
        if not (cls.is_spsd or cls.is_dd):
            raise PreconditionError(
                "diagonal pivoting is admissible only for SPSD or diagonally dominant matrices"
            )
    elif strategy != FULL:
        raise ValueError(f"unknown pivot strategy {strategy!r}")

    residual = arr.astype(float, copy=True)
    tol_abs = breakdown_tol * float(np.abs(arr).max())
    row_ok = np.ones(n_rows, dtype=bool)
    col_ok = np.ones(n_cols, dtype=bool)
    pivots: list[tuple[int, int, float]] = []
    termination = TERMINATION_RANK
    lookahead: tuple[int, int, float] | None = None
    residual_max = 0.0

    for _ in range(m):
        if strategy == DIAGONAL:
            i, j = _search_diagonal(residual, row_ok)
        else:
            i, j = _search_full(residual, row_ok, col_ok)
        p = float(residual[i, j])
        if abs(p) <= tol_abs:
            termination = TERMINATION_BREAKDOWN
            lookahead = (i, j, p)
            residual_max = abs(p)
            break
        _eliminate(residual, i, j)
        pivots.append((i, j, p))
        row_ok[i] = False
        col_ok[j] = False
    else:
        if row_ok.any() and col_ok.any():
            if strategy == DIAGONAL:
                i, j = _search_diagonal(residual, row_ok)
            else:
                i, j = _search_full(residual, row_ok, col_ok)
            p = float(residual[i, j])
            lookahead = (i, j, p)
            residual_max = abs(p)

    return CrossResult(
        pivots=tuple(pivots),
        row_indices=tuple(i for i, _, _ in pivots),
        col_indices=tuple(j for _, j, _ in pivots),
        steps_completed=len(pivots),
        termination=termination,
        residual_max=residual_max,
        lookahead=lookahead,
    )


def skeleton_residual(a, rows, cols) -> np.ndarray:
    """Residual ``A - A[:, cols] A[rows, cols]^{-1} A[rows, :]`` by explicit solve.

    This is the direct skeleton formula, independent of the recursive
    rank-1 updates, so it cross-checks them.
    """
    arr = as_matrix(a)
    rows = list(rows)
    cols = list(cols)
    block = arr[np.ix_(rows, cols)]
    try:
        mixing = np.linalg.solve(block, arr[rows, :])
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"skeleton block A[{rows}, {cols}] is singular") from exc
    return arr - arr[:, cols] @ mixing


def skeleton_error(a, result: CrossResult) -> float:
    """Max-norm error of the skeleton approximation built from ``result``.

    Must agree with ``result.residual_max`` up to round-off; a disagreement
    signals that the recursive Schur updates drifted from the explicit
    skeleton formula.
    """
    if result.steps_completed == 0:
        raise PreconditionError("skeleton needs at least one completed pivot step")
    try:
        res = skeleton_residual(a, result.row_indices, result.col_indices)
    except NumericalError as exc:
        values = np.abs(result.pivot_values)
        k = int(np.argmin(values))
        raise NumericalError(
            f"skeleton block is numerically singular; smallest pivot is step {k + 1} "
            f"with |p|={values[k]:.3e}"
        ) from exc
    return float(np.abs(res).max())


def lu_factors(a, result: CrossResult, include_lookahead: bool = True):
    """Triangular factors of the pivot-selected leading block.

    Permutes ``a`` by the pivot order (optionally appending the lookahead
    position) and factors the block as ``L @ U`` with ``L`` lower triangular
    carrying the pivots on its diagonal and ``U`` unit upper triangular.

    Returns ``(L, U, row_order, col_order)``.
    """
    arr = as_matrix(a)
    rows = list(result.row_indices)
    cols = list(result.col_indices)
    if include_lookahead:
        if result.lookahead is None:
            raise PreconditionError("result has no lookahead pivot to include")
        rows.append(result.lookahead[0])
        cols.append(result.lookahead[1])
    k = len(rows)
    if k == 0:
        raise PreconditionError("no pivots to factor")
    block = arr[np.ix_(rows, cols)].astype(float)
    lower = np.zeros((k, k))
    upper = np.eye(k)
    for s in range(k):
        p = block[s, s]
        if p == 0.0 and s < k - 1:
            raise NumericalError(f"zero pivot at step {s + 1} blocks the factorization")
        lower[s:, s] = block[s:, s]
        if p != 0.0:
            upper[s, s + 1:] = block[s, s + 1:] / p
            block[s + 1:, s + 1:] -= np.outer(block[s + 1:, s] / p, block[s, s + 1:])
    return lower, upper, tuple(rows), tuple(cols)


def ldu_diagnostics(a, result: CrossResult) -> LduDiagnostics:
    """LDU factors and growth diagnostics after a complete ``n-1``-step sweep.

    Requires a square full-rank matrix and a result holding ``n-1`` performed
    pivots plus the final lookahead pivot, which becomes the last diagonal
    entry of ``D``.
    """
    arr = as_matrix(a)
    n, m = arr.shape
    if n != m:
        raise DimensionError(f"LDU diagnostics need a square matrix, got {arr.shape}")
    if (result.steps_completed != n - 1 or result.lookahead is None
            or result.termination != TERMINATION_RANK):
        raise PreconditionError(
            f"need a complete pivot sequence of {n - 1} steps plus a lookahead pivot"
        )
    p_last = result.lookahead[2]
    if p_last == 0.0:
        raise NumericalError("final pivot is zero: the matrix is numerically singular")

    lower, upper, rows, cols = lu_factors(arr, result, include_lookahead=True)
    pivot_values = np.array(result.all_pivot_values)
    lower_unit = lower / pivot_values[None, :]
    diag = np.diag(pivot_values)

    norm = lambda mat: float(np.linalg.norm(mat, 2))
    return LduDiagnostics(
        L=lower_unit,
        D=diag,
        U=upper,
        norm_L_inv=norm(np.linalg.inv(lower_unit)),
        norm_U_inv=norm(np.linalg.inv(upper)),
        norm_D_inv=float(1.0 / np.abs(pivot_values).min()),
        r_m=float(abs(p_last) * norm(np.linalg.inv(arr))),
        realized_growth=float(np.abs(pivot_values[1:]).max() / abs(pivot_values[0])),
        interchanges_performed=not (rows == tuple(range(n)) and cols == tuple(range(n))),
        row_order=rows,
        col_order=cols,
    )


def realized_growth(pivot_values, a) -> GrowthReport:
    """Per-matrix growth ratios realized by a pivot sequence.

    ``pivot_values`` must be ``p_1, ..., p_{m+1}``: the performed pivots plus
    the lookahead.  ``growth`` is ``max_j |p_{j+1}| / |p_1|``, the realized
    counterpart of the complete-pivoting growth factor, and
    ``lookahead_ratio`` is ``|p_{m+1}| / min_j |p_j|`` over the performed
    pivots, the worst stepwise ratio.  Under complete pivoting ``|p_1|``
    equals the max-norm of the input.
    """
    values = np.abs(np.asarray(list(pivot_values), dtype=float))
    if values.size == 0:
        raise PreconditionError("pivot list is empty")
    if np.any(values == 0.0):
        raise NumericalError("pivot list contains a zero pivot")
    if values.size < 2:
        raise PreconditionError("need at least one step plus the lookahead pivot")
    amax = max_norm(a)
    if not np.isclose(values[0], amax, rtol=1e-9, atol=0.0):
        raise PreconditionError(
            f"first pivot {values[0]:.6e} does not match the matrix max-norm {amax:.6e}; "
            "the sequence does not come from complete pivoting"
        )
    return GrowthReport(
        growth=float(values[1:].max() / values[0]),
        lookahead_ratio=float(values[-1] / values[:-1].min()),
    )
