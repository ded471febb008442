import itertools

import numpy as np
import pytest

from crossvol import (
    CapabilityError,
    DimensionError,
    brute_force_maxvol,
    check_principal_optimality,
    column_volume,
    gallery,
    volume,
)


def test_volume_examples():
    assert volume(np.eye(3), [0, 1], [0, 1]) == 1.0
    assert volume(gallery.offdiag_identity(2), [0, 1], [2, 3]) == pytest.approx(1.0)
    # determinant of the tridiagonal family follows d_k = d_{k-1} + d_{k-2}/4
    assert volume(gallery.tridiag_bm(5), range(5), range(5)) == pytest.approx(2.1875)


def test_volume_index_validation():
    with pytest.raises(DimensionError):
        volume(np.eye(3), [0, 1], [0])
    with pytest.raises(DimensionError):
        volume(np.eye(3), [0, 0], [0, 1])
    with pytest.raises(DimensionError):
        volume(np.eye(3), [], [])
    with pytest.raises(DimensionError):
        volume(np.eye(3), [3], [0])


def test_volume_permutation_equivariance():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((5, 5))
    p, q = rng.permutation(5), rng.permutation(5)
    permuted = a[np.ix_(p, q)]
    rows, cols = (0, 2, 3), (1, 2, 4)
    mapped_rows = [int(p[i]) for i in rows]
    mapped_cols = [int(q[j]) for j in cols]
    assert volume(permuted, rows, cols) == pytest.approx(volume(a, mapped_rows, mapped_cols))


def test_brute_force_indefinite_k1():
    a = gallery.offdiag_identity(1)
    best = brute_force_maxvol(a, 1)
    assert best.volume == 1.0 and best.row_set == (0,) and best.col_set == (1,)
    principal = brute_force_maxvol(a, 1, principal_only=True)
    assert principal.volume == 0.0 and principal.is_principal


def test_brute_force_picks_principal_position():
    best = brute_force_maxvol(np.array([[2.0, -1.0], [-1.0, 2.0]]), 1)
    assert best.volume == 2.0
    assert best.row_set == best.col_set == (0,)


def test_brute_force_lexicographic_ties():
    best = brute_force_maxvol(np.eye(4), 2)
    assert best.volume == pytest.approx(1.0)
    assert best.row_set == (0, 1) and best.col_set == (0, 1)


def test_brute_force_cap_and_shape():
    with pytest.raises(CapabilityError):
        brute_force_maxvol(np.eye(30), 10)
    with pytest.raises(DimensionError):
        brute_force_maxvol(np.ones((2, 3)), 1)
    with pytest.raises(DimensionError):
        brute_force_maxvol(np.eye(3), 4)


def test_principal_optimality_spsd_and_dd():
    for seed in range(8):
        a = gallery.random_spsd(5, seed=seed)
        for k in (1, 2, 3):
            assert check_principal_optimality(a, k).holds
    for seed in range(8):
        a = gallery.random_dd(5, seed=seed)
        for k in (1, 2, 3):
            assert check_principal_optimality(a, k).holds


def test_principal_optimality_indefinite_blocks():
    """For [[0, I_k], [I_k, 0]] a k x k principal block of nonzero volume exists
    exactly when k is even: pairs (i, i+k) assemble [[0,1],[1,0]] blocks.  Odd
    sizes leave a zero-volume principal maximum while the overall maximum is 1."""
    for k, expected in ((1, False), (2, True), (3, False)):
        verdict = check_principal_optimality(gallery.offdiag_identity(k), k)
        assert verdict.holds is expected
        assert verdict.overall.volume == pytest.approx(1.0)
        if expected:
            assert verdict.principal.volume == pytest.approx(1.0)
        else:
            assert verdict.principal.volume == 0.0


def test_column_volume_examples():
    b = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert column_volume(b, [0, 1]) == pytest.approx(1.0)
    assert column_volume(b, []) == 1.0
    repeated = np.array([[1.0, 1.0], [2.0, 2.0], [0.5, 0.5]])
    assert column_volume(repeated, [0, 1]) == pytest.approx(0.0, abs=1e-12)
    # more columns than rows: rank-deficient, volume 0
    assert column_volume(np.ones((1, 3)), [0, 1, 2]) == 0.0


def test_column_volume_gram_identity():
    rng = np.random.default_rng(7)
    for _ in range(10):
        b = rng.standard_normal((5, 4))
        gram = b.T @ b
        for k in (1, 2, 3):
            for cols in itertools.combinations(range(4), k):
                assert column_volume(b, cols) ** 2 == pytest.approx(
                    volume(gram, cols, cols), rel=1e-9, abs=1e-12
                )


def test_gram_maximizers_coincide():
    rng = np.random.default_rng(13)
    for _ in range(10):
        b = rng.standard_normal((6, 6))
        gram = b.T @ b
        for k in (1, 2, 3):
            combos = list(itertools.combinations(range(6), k))
            by_columns = max(combos, key=lambda c: column_volume(b, c))
            by_principal = brute_force_maxvol(gram, k, principal_only=True).row_set
            assert set(by_columns) == set(by_principal)


def test_strictly_dd_triangular_submatrix_dominance():
    """Off-principal volumes of a strictly dominant unit upper triangular
    matrix stay strictly below the principal volume with the same rows."""
    for seed in range(10):
        n = 4 + seed % 2
        t = gallery.random_unit_upper_dd(n, seed=seed)
        for k in range(1, n + 1):
            for rows in itertools.combinations(range(n), k):
                principal = volume(t, rows, rows)
                for cols in itertools.combinations(range(n), k):
                    if cols != rows:
                        assert volume(t, rows, cols) < principal
