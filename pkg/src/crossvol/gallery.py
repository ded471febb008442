"""Deterministic matrix gallery: named examples and seeded random families.

Random families use numpy's PCG64 generator (``numpy.random.default_rng``)
with an explicit integer seed, so the same spec yields a bit-identical
matrix on every run.
"""

from __future__ import annotations

import math

import numpy as np


def identity(n: int) -> np.ndarray:
    _check_size(n)
    return np.eye(n)


def tridiag_bm(m: int) -> np.ndarray:
    """Tridiagonal matrix with diagonal 1, subdiagonal 1/2, superdiagonal -1/2.

    Doubly diagonally dominant; its determinant follows the recurrence
    ``d_k = d_{k-1} + d_{k-2}/4`` and grows like ``((1 + sqrt 2)/2)^m``.
    """
    _check_size(m)
    a = np.eye(m)
    idx = np.arange(m - 1)
    a[idx + 1, idx] = 0.5
    a[idx, idx + 1] = -0.5
    return a


def tridiag_bm_det(m: int) -> float:
    """Determinant of :func:`tridiag_bm` via its recurrence (exact in floats)."""
    _check_size(m)
    if m == 1:
        return 1.0
    prev, cur = 1.0, 1.25
    for _ in range(m - 2):
        prev, cur = cur, cur + prev / 4.0
    return cur


def block_remark(m: int) -> np.ndarray:
    """Block diagonal ``diag(I_m, tridiag_bm(m))`` of size ``2m``.

    Complete pivoting with lexicographic ties eliminates the identity block
    and never touches the exponentially larger-volume tridiagonal block.
    """
    _check_size(m)
    a = np.zeros((2 * m, 2 * m))
    a[:m, :m] = np.eye(m)
    a[m:, m:] = tridiag_bm(m)
    return a


def quad_growth(n: int) -> np.ndarray:
    """Diagonally dominant matrix whose pivot/singular-value ratio grows quadratically.

    ``n`` must be even; blocks have size ``n/2``.  The top-left block is
    unit-diagonal upper bidiagonal with -1 above the diagonal, the last row
    of the top half continues with the constant ``-1/(n/2+1)``, the bottom
    half carries -1 in its first column and an identity block.  Complete
    pivoting performs no interchanges and the final pivot is 1/2.
    """
    _check_size(n)
    if n % 2 != 0:
        raise ValueError(f"quad_growth needs an even size, got {n}")
    q = n // 2
    a = np.zeros((n, n))
    a[:q, :q] = np.eye(q)
    idx = np.arange(q - 1)
    a[idx, idx + 1] = -1.0
    a[q - 1, q:] = -1.0 / (q + 1)
    a[q:, 0] = -1.0
    a[q:, q:] += np.eye(q)
    return a


def bidiagonal(n: int) -> np.ndarray:
    """Lower bidiagonal matrix with 1 on the diagonal and -1 below it."""
    _check_size(n)
    a = np.eye(n)
    idx = np.arange(n - 1)
    a[idx + 1, idx] = -1.0
    return a


def offdiag_identity(k: int) -> np.ndarray:
    """The ``2k x 2k`` block matrix ``[[0, I], [I, 0]]`` (symmetric indefinite)."""
    _check_size(k)
    a = np.zeros((2 * k, 2 * k))
    a[:k, k:] = np.eye(k)
    a[k:, :k] = np.eye(k)
    return a


DEFAULT_KAHAN_THETA = math.acos(0.6)


def kahan(n: int, theta: float | None = None) -> np.ndarray:
    """Kahan's graded upper triangular matrix.

    ``R = diag(1, s, ..., s^(n-1)) @ T`` where ``T`` is unit upper triangular
    with ``-c`` above the diagonal, ``s = sin(theta)``, ``c = cos(theta)``.
    Default angle gives ``c = 0.6``.  Standard construction in pivot-growth
    tightness studies.
    """
    _check_size(n)
    if theta is None:
        theta = DEFAULT_KAHAN_THETA
    s, c = math.sin(theta), math.cos(theta)
    t = np.eye(n) - c * np.triu(np.ones((n, n)), 1)
    return np.diag(s ** np.arange(n)) @ t


def kahan_spsd(n: int, theta: float | None = None) -> np.ndarray:
    """SPSD variant ``R^T R`` of the Kahan matrix."""
    r = kahan(n, theta)
    return r.T @ r


def random_spsd(n: int, seed: int) -> np.ndarray:
    """``G^T G`` for a seeded standard-normal ``G``: SPSD, full rank a.s."""
    _check_size(n)
    g = np.random.default_rng(seed).standard_normal((n, n))
    return g.T @ g


def random_dd(n: int, seed: int) -> np.ndarray:
    """Strictly row diagonally dominant matrix with seeded normal off-diagonal.

    Each diagonal entry is the absolute row sum of the off-diagonal part
    inflated by a factor ``1 + u`` with ``u`` uniform in ``[0, 1]``, which
    guarantees strictness.
    """
    _check_size(n)
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    np.fill_diagonal(a, 0.0)
    off = np.abs(a).sum(axis=1)
    np.fill_diagonal(a, off * (1.0 + rng.uniform(0.0, 1.0, size=n)))
    return a


def random_doubly_dd(n: int, seed: int) -> np.ndarray:
    """Doubly diagonally dominant matrix via a symmetrized construction.

    The off-diagonal part is symmetrized, so row and column sums agree and
    row dominance implies column dominance.
    """
    _check_size(n)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n))
    a = (g + g.T) / 2.0
    np.fill_diagonal(a, 0.0)
    off = np.abs(a).sum(axis=1)
    np.fill_diagonal(a, off * (1.0 + rng.uniform(0.0, 1.0, size=n)))
    return a


def random_unit_upper_dd(n: int, seed: int) -> np.ndarray:
    """Strictly diagonally dominant unit upper triangular matrix.

    Each row's off-diagonal tail is scaled to an absolute sum drawn
    uniformly from ``[0.1, 0.9]``, keeping dominance strict with margin.
    """
    _check_size(n)
    rng = np.random.default_rng(seed)
    t = np.eye(n)
    for i in range(n - 1):
        raw = rng.standard_normal(n - 1 - i)
        total = np.abs(raw).sum()
        if total > 0:
            t[i, i + 1:] = raw * (rng.uniform(0.1, 0.9) / total)
    return t


_SIZED = {
    "identity": identity,
    "tridiag_bm": tridiag_bm,
    "block_remark": block_remark,
    "quad_growth": quad_growth,
    "bidiagonal": bidiagonal,
    "offdiag_identity": offdiag_identity,
}

_ANGLED = {"kahan": kahan, "kahan_spsd": kahan_spsd}

_SEEDED = {
    "random_spsd": random_spsd,
    "random_dd": random_dd,
    "random_doubly_dd": random_doubly_dd,
    "random_unit_upper_dd": random_unit_upper_dd,
}

GALLERY_NAMES = tuple(sorted({**_SIZED, **_ANGLED, **_SEEDED}))


def generate(name: str, n: int, seed: int | None = None,
             theta: float | None = None) -> np.ndarray:
    """Build a gallery matrix by name.

    ``n`` is the family's size parameter (`block_remark` and
    `offdiag_identity` return ``2n x 2n`` matrices).  Random families require
    ``seed``; ``theta`` applies to the Kahan variants only.
    """
    if name in _SIZED:
        return _SIZED[name](n)
    if name in _ANGLED:
        return _ANGLED[name](n, theta)
    if name in _SEEDED:
        if seed is None:
            raise ValueError(f"gallery family {name!r} needs a seed")
        return _SEEDED[name](n, seed)
    raise ValueError(f"unknown gallery name {name!r}; choose from {', '.join(GALLERY_NAMES)}")


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError(f"matrix size must be positive, got {n}")
