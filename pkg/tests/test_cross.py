import numpy as np
import pytest

from crossvol import (
    DIAGONAL,
    FULL,
    DimensionError,
    NumericalError,
    PreconditionError,
    cross_approximate,
    gallery,
    inf_to_one_norm,
    ldu_diagnostics,
    lu_factors,
    max_norm,
    realized_growth,
    skeleton_error,
    skeleton_residual,
    wilkinson_bound,
)


def test_block_matrix_walks_the_identity():
    # lexicographic ties keep the unit pivots of the identity block
    result = cross_approximate(gallery.block_remark(3), 3)
    assert result.pivots == ((0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0))
    assert result.termination == "requested_rank"


def test_single_step_by_hand():
    a = np.array([[2.0, -1.0], [-1.0, 2.0]])
    result = cross_approximate(a, 1)
    assert result.pivots == ((0, 0, 2.0),)
    assert result.residual_max == pytest.approx(1.5)
    assert skeleton_error(a, result) == pytest.approx(1.5)
    residual = skeleton_residual(a, result.row_indices, result.col_indices)
    assert residual == pytest.approx(np.array([[0.0, 0.0], [0.0, 1.5]]))


def test_rank_one_input_breaks_down():
    ones = np.ones((3, 3))
    one_step = cross_approximate(ones, 1)
    assert one_step.termination == "requested_rank"
    assert one_step.residual_max == 0.0
    assert skeleton_error(ones, one_step) == pytest.approx(0.0, abs=1e-14)

    two_steps = cross_approximate(ones, 2)
    assert two_steps.termination == "breakdown"
    assert two_steps.steps_completed == 1


def test_identity_skeleton_error():
    result = cross_approximate(np.eye(3), 2)
    assert skeleton_error(np.eye(3), result) == pytest.approx(1.0)


def test_input_is_never_mutated():
    a = np.ones((3, 3))
    before = a.copy()
    cross_approximate(a, 2)
    assert np.array_equal(a, before)


def test_residual_max_matches_explicit_skeleton():
    rng = np.random.default_rng(0)
    for _ in range(15):
        a = rng.standard_normal((7, 7))
        for m in (1, 3, 5):
            result = cross_approximate(a, m)
            assert abs(skeleton_error(a, result) - result.residual_max) <= 1e-9 * max_norm(a)


def test_pivot_indices_are_distinct():
    rng = np.random.default_rng(14)
    a = rng.standard_normal((6, 9))
    result = cross_approximate(a, 5)
    assert len(set(result.row_indices)) == 5
    assert len(set(result.col_indices)) == 5


def test_one_index_extension_determinant_identity():
    # det(A(I+i, J+j)) = det(A(I, J)) * R_k(i, j) for the running residual R_k
    rng = np.random.default_rng(6)
    for _ in range(5):
        a = rng.standard_normal((6, 6))
        for k in (1, 2, 3):
            result = cross_approximate(a, k)
            rows, cols = list(result.row_indices), list(result.col_indices)
            residual = skeleton_residual(a, rows, cols)
            base = np.linalg.det(a[np.ix_(rows, cols)])
            free_rows = [i for i in range(6) if i not in rows][:2]
            free_cols = [j for j in range(6) if j not in cols][:2]
            for i in free_rows:
                for j in free_cols:
                    ext = np.linalg.det(a[np.ix_(rows + [i], cols + [j])])
                    assert ext == pytest.approx(base * residual[i, j], rel=1e-9, abs=1e-9)


def test_diagonal_strategy_matches_full_on_structured_input():
    for seed in range(6):
        for make in (gallery.random_spsd, gallery.random_dd):
            a = make(7, seed=seed)
            full = cross_approximate(a, 4, strategy=FULL)
            diag = cross_approximate(a, 4, strategy=DIAGONAL)
            assert np.abs(diag.pivot_values) == pytest.approx(
                np.abs(full.pivot_values), rel=1e-12
            )
            assert diag.row_indices == diag.col_indices


def test_diagonal_strategy_preconditions():
    with pytest.raises(PreconditionError):
        cross_approximate(np.array([[1.0, 2.0], [2.0, 1.0]]), 1, strategy=DIAGONAL)
    with pytest.raises(PreconditionError):
        cross_approximate(np.ones((2, 3)), 1, strategy=DIAGONAL)
    with pytest.raises(ValueError):
        cross_approximate(np.eye(2), 1, strategy="rook")
    with pytest.raises(DimensionError):
        cross_approximate(np.eye(3), 4)
    with pytest.raises(DimensionError):
        cross_approximate(np.eye(3), 0)


def test_pivot_minimum_chain_general():
    # min |p_1..p_{m+1}| <= 4^m sigma_{m+1} for every matrix
    rng = np.random.default_rng(23)
    for _ in range(10):
        a = rng.standard_normal((8, 8))
        sigma = np.linalg.svd(a, compute_uv=False)
        for m in (1, 2, 4, 6):
            result = cross_approximate(a, m)
            min_pivot = np.abs(result.all_pivot_values).min()
            assert min_pivot <= 4.0**m * sigma[m] * (1 + 1e-9)


def test_triangular_factor_inverse_bounds():
    """Spectral and inf->1 norms of the triangular factor inverses satisfy the
    complete-pivoting estimates that drive the error bounds."""
    rng = np.random.default_rng(31)
    for _ in range(8):
        a = rng.standard_normal((7, 7))
        m = 3
        result = cross_approximate(a, m)
        lower, upper, _, _ = lu_factors(a, result, include_lookahead=True)
        min_pivot = np.abs(result.all_pivot_values).min()
        steps = lower.shape[0] - 1
        assert np.linalg.norm(np.linalg.inv(upper), 2) <= 2.0**steps * (1 + 1e-9)
        assert np.linalg.norm(np.linalg.inv(lower), 2) <= 2.0**steps / min_pivot * (1 + 1e-9)
        assert inf_to_one_norm(np.linalg.inv(lower)) <= (2.0 ** (steps + 1) - 1) / min_pivot * (1 + 1e-9)


def test_incomplete_lu_reconstructs_permuted_matrix():
    rng = np.random.default_rng(8)
    a = rng.standard_normal((7, 7))
    m = 3
    result = cross_approximate(a, m)
    lower, upper, rows, cols = lu_factors(a, result, include_lookahead=False)
    rest_rows = [i for i in range(7) if i not in rows]
    rest_cols = [j for j in range(7) if j not in cols]
    perm = a[np.ix_(list(rows) + rest_rows, list(cols) + rest_cols)]
    a11, a12 = perm[:m, :m], perm[:m, m:]
    a21, a22 = perm[m:, :m], perm[m:, m:]
    l_full = np.vstack([lower, a21 @ np.linalg.inv(upper)])
    u_full = np.hstack([upper, np.linalg.solve(lower, a12)])
    reconstruction = l_full @ u_full
    reconstruction[m:, m:] += a22 - a21 @ np.linalg.solve(a11, a12)
    assert np.abs(perm - reconstruction).max() <= 1e-9 * max_norm(a)


def test_ldu_identity():
    result = cross_approximate(np.eye(5), 4)
    diag = ldu_diagnostics(np.eye(5), result)
    assert np.array_equal(diag.L, np.eye(5))
    assert np.array_equal(diag.D, np.eye(5))
    assert np.array_equal(diag.U, np.eye(5))
    assert diag.r_m == pytest.approx(1.0)
    assert not diag.interchanges_performed


def test_ldu_bidiagonal_factors():
    b = gallery.bidiagonal(8)
    diag = ldu_diagnostics(b, cross_approximate(b, 7))
    assert np.array_equal(diag.L, b)
    assert np.array_equal(diag.D, np.eye(8))
    assert np.array_equal(diag.U, np.eye(8))


def test_ldu_quad_growth_no_interchanges():
    a = gallery.quad_growth(12)
    result = cross_approximate(a, 11)
    diag = ldu_diagnostics(a, result)
    assert not diag.interchanges_performed
    assert abs(result.lookahead[2]) == pytest.approx(0.5, abs=1e-12)
    assert diag.norm_D_inv == pytest.approx(2.0, abs=1e-11)


def test_ldu_reconstructs_permuted_matrix():
    rng = np.random.default_rng(19)
    for _ in range(5):
        a = rng.standard_normal((6, 6))
        result = cross_approximate(a, 5)
        diag = ldu_diagnostics(a, result)
        perm = a[np.ix_(diag.row_order, diag.col_order)]
        assert np.abs(diag.L @ diag.D @ diag.U - perm).max() <= 1e-9 * max_norm(a)


def test_ldu_requires_complete_sweep():
    a = np.random.default_rng(1).standard_normal((5, 5))
    with pytest.raises(PreconditionError):
        ldu_diagnostics(a, cross_approximate(a, 3))


def test_realized_growth_examples():
    eye = np.eye(4)
    result = cross_approximate(eye, 3)
    report = realized_growth(result.all_pivot_values, eye)
    assert report.growth == 1.0 and report.lookahead_ratio == 1.0

    for seed in range(6):
        spsd = gallery.random_spsd(7, seed=seed)
        r = cross_approximate(spsd, 5)
        rep = realized_growth(r.all_pivot_values, spsd)
        assert rep.growth <= 1.0 + 1e-12

    for seed in range(6):
        dd = gallery.random_dd(7, seed=seed)
        r = cross_approximate(dd, 5)
        rep = realized_growth(r.all_pivot_values, dd)
        assert rep.growth <= 2.0 + 1e-12
        assert rep.lookahead_ratio <= wilkinson_bound(5)


def test_realized_growth_validation():
    with pytest.raises(NumericalError):
        realized_growth([1.0, 0.0], np.eye(2))
    with pytest.raises(PreconditionError):
        realized_growth([1.0], np.eye(2))
    with pytest.raises(PreconditionError):
        realized_growth([0.5, 0.2], np.eye(2))  # first pivot is not the max-norm
