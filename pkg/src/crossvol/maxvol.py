"""Submatrix volumes and exhaustive maximum-volume search.

Finding the maximum-volume submatrix is NP-hard in general, so the search
here is an exact brute-force oracle with an enumeration cap.  It exists to
verify the principal-submatrix optimality results for SPSD and diagonally
dominant matrices at small sizes, not to be fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import as_matrix, check_index_set
from .exceptions import CapabilityError, DimensionError

DEFAULT_PAIR_CAP = 10_000_000


@dataclass(frozen=True)
class VolumeResult:
    """A submatrix together with its volume (absolute determinant)."""

    row_set: tuple[int, ...]
    col_set: tuple[int, ...]
    volume: float
    is_principal: bool


@dataclass(frozen=True)
class PrincipalOptimality:
    """Outcome of comparing the best principal volume against the best overall."""

    holds: bool
    overall: VolumeResult
    principal: VolumeResult


def volume(a, rows, cols) -> float:
    """Absolute determinant of the square submatrix ``a[rows, cols]``."""
    arr = as_matrix(a)
    rows = check_index_set(rows, arr.shape[0], "row set")
    cols = check_index_set(cols, arr.shape[1], "column set")
    if len(rows) != len(cols):
        raise DimensionError(f"row and column sets must have equal size, got {len(rows)} and {len(cols)}")
    if not rows:
        raise DimensionError("volume needs at least one row and column")
    return float(abs(np.linalg.det(arr[np.ix_(rows, cols)])))


def column_volume(b, cols) -> float:
    """Volume of a column subset: the product of its singular values.

    An empty selection returns 1.0 (empty product).  Selecting more columns
    than rows yields a rank-deficient block, hence volume 0.
    """
    arr = as_matrix(b)
    cols = check_index_set(cols, arr.shape[1], "column set")
    if not cols:
        return 1.0
    if len(cols) > arr.shape[0]:
        return 0.0
    s = np.linalg.svd(arr[:, cols], compute_uv=False)
    return float(np.prod(s))


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise CapabilityError(
            f"exhaustive volume search over {count} candidates exceeds the cap of {cap}; "
            "the problem is NP-hard and this oracle is desk-scale only"
        )


def brute_force_maxvol(a, k: int, principal_only: bool = False,
                       pair_cap: int = DEFAULT_PAIR_CAP) -> VolumeResult:
    """Exact maximum-volume ``k x k`` submatrix by exhaustive enumeration.

    Parameters
    ----------
    a : array_like
        Square matrix.
    k : int
        Submatrix size, ``1 <= k <= n``.
    principal_only : bool, optional
        Restrict the search to principal submatrices (equal row and column
        sets).
    pair_cap : int, optional
        Upper bound on the number of candidate index pairs, ``C(n,k)^2`` in
        the overall search and ``C(n,k)`` in the principal one.

    Returns
    -------
    VolumeResult
        An exact maximizer.  Ties are broken by lexicographic order on the
        pair ``(row_set, col_set)`` so results are reproducible.
    """
    arr = as_matrix(a)
    n, m = arr.shape
    if n != m:
        raise DimensionError(f"maxvol search needs a square matrix, got {arr.shape}")
    if not 1 <= k <= n:
        raise DimensionError(f"submatrix size k={k} out of range [1, {n}]")
    n_combos = comb(n, k)
    _check_cap(n_combos if principal_only else n_combos * n_combos, pair_cap)

    combos = np.array(list(itertools.combinations(range(n), k)), dtype=int)
    if principal_only:
        subs = arr[combos[:, :, None], combos[:, None, :]]
        vols = np.abs(np.linalg.det(subs))
        best = int(np.argmax(vols))  # first max = lexicographically smallest
        idx = tuple(int(i) for i in combos[best])
        return VolumeResult(idx, idx, float(vols[best]), True)

    best_vol = -1.0
    best_rows = best_cols = combos[0]
    for row_combo in combos:
        stacked = np.transpose(arr[row_combo, :][:, combos], (1, 0, 2))
        vols = np.abs(np.linalg.det(stacked))
        j = int(np.argmax(vols))
        if vols[j] > best_vol:
            best_vol = float(vols[j])
            best_rows, best_cols = row_combo, combos[j]
    rows = tuple(int(i) for i in best_rows)
    cols = tuple(int(j) for j in best_cols)
    return VolumeResult(rows, cols, best_vol, rows == cols)


def check_principal_optimality(a, k: int, rel_tol: float = 1e-9,
                               pair_cap: int = DEFAULT_PAIR_CAP) -> PrincipalOptimality:
    """Does some principal submatrix attain the overall maximum volume?

    Returns the verdict together with both maximizers as witnesses.  The
    comparison allows a relative slack of ``rel_tol`` on the overall maximum
    to absorb determinant round-off.
    """
    overall = brute_force_maxvol(a, k, principal_only=False, pair_cap=pair_cap)
    principal = brute_force_maxvol(a, k, principal_only=True, pair_cap=pair_cap)
    holds = principal.volume >= overall.volume - rel_tol * overall.volume
    return PrincipalOptimality(bool(holds), overall, principal)
