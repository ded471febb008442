import math

import numpy as np
import pytest

from crossvol import classify, gallery, singular_values


def test_tridiag_bm_matrix():
    expected = np.array([
        [1.0, -0.5, 0.0],
        [0.5, 1.0, -0.5],
        [0.0, 0.5, 1.0],
    ])
    assert np.array_equal(gallery.tridiag_bm(3), expected)
    c = classify(gallery.tridiag_bm(6))
    assert c.is_dd and c.is_doubly_dd


def test_tridiag_bm_determinant_growth():
    for m in range(1, 12):
        direct = abs(np.linalg.det(gallery.tridiag_bm(m)))
        assert direct == pytest.approx(gallery.tridiag_bm_det(m), rel=1e-12)
    rate = gallery.tridiag_bm_det(10) ** 0.1
    assert abs(rate - (1 + math.sqrt(2)) / 2) <= 0.02


def test_quad_growth_rows():
    a = gallery.quad_growth(6)
    assert a[2].tolist() == [0.0, 0.0, 1.0, -0.25, -0.25, -0.25]
    for i in (3, 4, 5):
        assert a[i, 0] == -1.0 and a[i, i] == 1.0
    c = classify(a)
    assert c.is_dd and not c.is_strictly_dd and not c.is_doubly_dd
    with pytest.raises(ValueError):
        gallery.quad_growth(7)


def test_offdiag_identity():
    assert np.array_equal(gallery.offdiag_identity(1), np.array([[0.0, 1.0], [1.0, 0.0]]))
    a = gallery.offdiag_identity(3)
    assert np.array_equal(a[:3, 3:], np.eye(3)) and np.array_equal(a[3:, :3], np.eye(3))
    assert classify(a).is_symmetric and not classify(a).is_spsd


def test_bidiagonal_and_block():
    b = gallery.bidiagonal(4)
    assert np.array_equal(np.diag(b), np.ones(4))
    assert np.array_equal(np.diag(b, -1), -np.ones(3))
    assert classify(b).is_doubly_dd

    blk = gallery.block_remark(3)
    assert np.array_equal(blk[:3, :3], np.eye(3))
    assert np.array_equal(blk[3:, 3:], gallery.tridiag_bm(3))
    assert classify(blk).is_dd


def test_kahan_default_angle():
    r = gallery.kahan(4)
    assert r[0, 1] == pytest.approx(-0.6)
    assert r[1, 1] == pytest.approx(0.8)
    assert np.array_equal(np.tril(r, -1), np.zeros((4, 4)))
    spsd = gallery.kahan_spsd(6)
    assert np.array_equal(spsd, gallery.kahan(6).T @ gallery.kahan(6))
    assert classify(spsd).is_spsd


def test_random_families_classify():
    for seed in range(10):
        assert classify(gallery.random_spsd(8, seed=seed)).is_spsd
        dd = classify(gallery.random_dd(8, seed=seed))
        assert dd.is_strictly_dd
        ddd = classify(gallery.random_doubly_dd(8, seed=seed))
        assert ddd.is_doubly_dd and ddd.is_strictly_dd
        t = gallery.random_unit_upper_dd(6, seed=seed)
        assert classify(t).is_strictly_dd
        assert np.array_equal(np.diag(t), np.ones(6))
        assert np.array_equal(np.tril(t, -1), np.zeros((6, 6)))


def test_random_spsd_full_rank():
    for seed in range(5):
        s = singular_values(gallery.random_spsd(6, seed=seed))
        assert s[-1] > 1e-8 * s[0]


def test_generators_are_deterministic():
    for name in ("random_spsd", "random_dd", "random_doubly_dd", "random_unit_upper_dd"):
        first = gallery.generate(name, 7, seed=42)
        second = gallery.generate(name, 7, seed=42)
        assert np.array_equal(first, second)
        assert not np.array_equal(first, gallery.generate(name, 7, seed=43))


def test_generate_dispatch_and_errors():
    assert np.array_equal(gallery.generate("identity", 3), np.eye(3))
    assert gallery.generate("kahan", 4, theta=math.acos(0.5))[0, 1] == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        gallery.generate("no_such_family", 3)
    with pytest.raises(ValueError):
        gallery.generate("random_dd", 3)  # seed missing
    with pytest.raises(ValueError):
        gallery.generate("identity", 0)
