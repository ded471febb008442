"""Dense-matrix basics: validation, norms, singular values, class detection, text I/O.

All matrices are plain ``numpy.ndarray`` objects with float64 entries.  Indices
are 0-based throughout the library; only CLI report output is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CapabilityError, DimensionError

# Hard cap on the sign-vector enumeration behind the inf->1 norm.  2^25
# vectors is a few seconds of dense arithmetic; beyond that the exhaustive
# method stops being desk-scale.
SIGN_ENUM_CAP = 25

_CHUNK = 1 << 15


def as_matrix(a) -> np.ndarray:
    """Validate ``a`` as a nonempty 2-D array of finite floats and return it."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"expected a nonempty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return arr


def check_index_set(indices: Iterable[int], bound: int, what: str = "index set") -> tuple[int, ...]:
    """Validate an index set: integers, duplicate-free, all within ``[0, bound)``.

    The order given by the caller is preserved.
    """
    idx = tuple(int(i) for i in indices)
    if len(set(idx)) != len(idx):
        raise DimensionError(f"{what} contains duplicate indices: {idx}")
    for i in idx:
        if not 0 <= i < bound:
            raise DimensionError(f"{what} index {i} out of range [0, {bound})")
    return idx


def max_norm(a) -> float:
    """Largest absolute entry, i.e. the norm induced from the 1-norm to the max-norm."""
    arr = as_matrix(a)
    return float(np.abs(arr).max())


def inf_to_one_norm(b, cap: int = SIGN_ENUM_CAP) -> float:
    """Operator norm from the max-norm ball to the 1-norm, computed exactly.

    The maximum of the convex map ``x -> ||B x||_1`` over the unit inf-ball is
    attained at a vertex, so the norm equals the maximum of ``||B x||_1`` over
    all sign vectors ``x`` in ``{-1, +1}^n_cols``.  The enumeration uses the
    symmetry ``x ~ -x`` and runs in vectorized chunks.

    Parameters
    ----------
    b : array_like
        Matrix with at most ``cap`` columns.
    cap : int, optional
        Enumeration cap on the number of columns.

    Raises
    ------
    CapabilityError
        If ``b`` has more than ``cap`` columns; the exact method enumerates
        ``2^(n_cols-1)`` sign vectors and is intentionally capped.
    """
    arr = as_matrix(b)
    n = arr.shape[1]
    if n > cap:
        raise CapabilityError(
            f"inf->1 norm is computed by exhaustive sign enumeration; "
            f"n_cols={n} exceeds the cap of {cap}"
        )
    total = 1 << (n - 1)
    shifts = np.arange(n - 1, dtype=np.int64)
    best = 0.0
    for start in range(0, total, _CHUNK):
        ids = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        signs = np.empty((len(ids), n))
        signs[:, 0] = 1.0
        signs[:, 1:] = 2.0 * ((ids[:, None] >> shifts) & 1) - 1.0
        vals = np.abs(signs @ arr.T).sum(axis=1)
        best = max(best, float(vals.max()))
    return best


def singular_values(a) -> np.ndarray:
    """Singular values in non-increasing order."""
    return np.linalg.svd(as_matrix(a), compute_uv=False)


@dataclass(frozen=True)
class MatrixClass:
    """Membership flags for the structured matrix classes used by the bounds."""

    is_symmetric: bool
    is_spsd: bool
    is_dd: bool
    is_strictly_dd: bool
    is_doubly_dd: bool

    def to_dict(self) -> dict[str, bool]:
        return {
            "is_symmetric": self.is_symmetric,
            "is_spsd": self.is_spsd,
            "is_dd": self.is_dd,
            "is_strictly_dd": self.is_strictly_dd,
            "is_doubly_dd": self.is_doubly_dd,
        }


def _row_dominance(arr: np.ndarray, tol: float) -> tuple[bool, bool]:
    absd = np.abs(np.diag(arr))
    off = np.abs(arr).sum(axis=1) - absd
    dd = bool(np.all(off <= absd + tol))
    strict = bool(np.all(off < absd - tol))
    return dd, strict


def classify(a, tol: float | None = None) -> MatrixClass:
    """Detect symmetry, positive semidefiniteness, and diagonal dominance.

    A square matrix is (row) diagonally dominant when every diagonal entry
    dominates the absolute row sum of the off-diagonal entries; strict
    dominance requires a margin larger than ``tol``, and double dominance
    requires the transpose to be dominant as well.  SPSD means symmetric with
    smallest eigenvalue at least ``-tol * max_norm``.

    Parameters
    ----------
    a : array_like
        Square matrix.
    tol : float, optional
        Classification tolerance.  Defaults to ``1e-12 * max_norm(a)``, which
        treats exactly representable structured matrices as exact members.
    """
    arr = as_matrix(a)
    n, m = arr.shape
    if n != m:
        raise DimensionError(f"classification needs a square matrix, got {arr.shape}")
    amax = float(np.abs(arr).max())
    if tol is None:
        tol = 1e-12 * amax
    if tol < 0:
        raise ValueError("tol must be nonnegative")

    symmetric = bool(np.abs(arr - arr.T).max() <= tol)
    spsd = False
    if symmetric:
        eigmin = float(np.linalg.eigvalsh((arr + arr.T) / 2.0).min())
        spsd = eigmin >= -tol * amax
    dd, strict = _row_dominance(arr, tol)
    dd_t, _ = _row_dominance(arr.T, tol)
    return MatrixClass(
        is_symmetric=symmetric,
        is_spsd=spsd,
        is_dd=dd,
        is_strictly_dd=strict,
        is_doubly_dd=dd and dd_t,
    )


def read_matrix(source) -> np.ndarray:
    """Read a matrix from the plain text format.

    Format: optional ``#``-prefixed comment lines, a header line
    ``n_rows n_cols``, then ``n_rows`` lines of ``n_cols`` whitespace-separated
    numbers.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    body = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in body if ln and not ln.startswith("#")]
    if not body:
        raise ValueError("matrix file has no content")
    header = body[0].split()
    if len(header) != 2:
        raise ValueError(f"matrix header must be 'n_rows n_cols', got {body[0]!r}")
    try:
        n_rows, n_cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValueError(f"matrix header must hold two integers, got {body[0]!r}") from exc
    if n_rows <= 0 or n_cols <= 0:
        raise ValueError(f"matrix dimensions must be positive, got {n_rows} x {n_cols}")
    rows = body[1:]
    if len(rows) != n_rows:
        raise ValueError(f"expected {n_rows} data rows, found {len(rows)}")
    entries = np.empty((n_rows, n_cols))
    for i, line in enumerate(rows):
        parts = line.split()
        if len(parts) != n_cols:
            raise ValueError(f"row {i + 1} has {len(parts)} entries, expected {n_cols}")
        try:
            entries[i] = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"row {i + 1} holds a non-numeric entry") from exc
    return as_matrix(entries)


def format_float(x: float) -> str:
    """17 significant digits; round-trips every finite double."""
    return format(float(x), ".17g")


def write_matrix(a, target, comment: str | None = None) -> None:
    """Write a matrix in the plain text format (see :func:`read_matrix`)."""
    arr = as_matrix(a)
    lines = []
    if comment:
        lines.extend(f"# {ln}" for ln in comment.splitlines())
    lines.append(f"{arr.shape[0]} {arr.shape[1]}")
    for row in arr:
        lines.append(" ".join(format_float(x) for x in row))
    text = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text)
