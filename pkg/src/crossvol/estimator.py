"""Scikit-learn compatible front end for skeleton low-rank approximation."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .core import as_matrix
from .cross import FULL, cross_approximate
from .exceptions import NumericalError


class CrossApproximator(BaseEstimator, TransformerMixin):
    """Skeleton low-rank approximation with completely pivoted cross selection.

    ``fit`` greedily selects up to ``rank`` pivot rows and columns of the
    training matrix ``A`` and stores the mixing map
    ``A[I, J]^{-1} A[I, :]``.  ``transform`` then projects any matrix with
    the same number of columns onto the fitted skeleton,
    ``X[:, J] @ A[I, J]^{-1} A[I, :]``; applied to the training matrix this
    is the rank-``k`` cross approximation itself.

    Parameters
    ----------
    rank : int, default=2
        Number of pivot steps requested.  Fewer pivots are kept when the
        matrix breaks down earlier (numerical rank below ``rank``).
    strategy : {"full", "diagonal"}, default="full"
        Pivot search strategy; "diagonal" is valid for SPSD and diagonally
        dominant matrices only.
    breakdown_tol : float, default=1e-12
        Relative pivot threshold that stops the selection early.

    Attributes
    ----------
    row_indices_ : ndarray of shape (k,)
        Selected pivot rows, in selection order.
    col_indices_ : ndarray of shape (k,)
        Selected pivot columns, in selection order.
    mixing_ : ndarray of shape (k, n_features)
        The fitted map ``A[I, J]^{-1} A[I, :]``.
    result_ : CrossResult
        Full pivot record of the fit.
    n_features_in_ : int
        Number of columns seen during fit.

    Examples
    --------
    >>> import numpy as np
    >>> from crossvol import CrossApproximator
    >>> a = np.array([[2.0, -1.0], [-1.0, 2.0]])
    >>> approx = CrossApproximator(rank=1).fit_transform(a)
    >>> np.abs(a - approx).max()
    1.5
    """

    def __init__(self, rank: int = 2, strategy: str = FULL,
                 breakdown_tol: float = 1e-12):
        self.rank = rank
        self.strategy = strategy
        self.breakdown_tol = breakdown_tol

    def fit(self, X, y=None):
        a = as_matrix(X)
        result = cross_approximate(a, self.rank, strategy=self.strategy,
                                   breakdown_tol=self.breakdown_tol)
        if result.steps_completed == 0:
            raise NumericalError("matrix is numerically zero; no pivot to select")
        rows = list(result.row_indices)
        cols = list(result.col_indices)
        self.result_ = result
        self.row_indices_ = np.array(rows)
        self.col_indices_ = np.array(cols)
        self.mixing_ = np.linalg.solve(a[np.ix_(rows, cols)], a[rows, :])
        self.n_features_in_ = a.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "mixing_"):
            raise RuntimeError("this CrossApproximator instance is not fitted yet")
        a = as_matrix(X)
        if a.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {a.shape[1]} features, but the approximator was fitted "
                f"with {self.n_features_in_}"
            )
        return a[:, self.col_indices_] @ self.mixing_
