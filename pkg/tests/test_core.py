import io
import itertools

import numpy as np
import pytest

from crossvol import (
    CapabilityError,
    DimensionError,
    as_matrix,
    classify,
    inf_to_one_norm,
    max_norm,
    read_matrix,
    singular_values,
    write_matrix,
)


def test_max_norm_examples():
    assert max_norm([[1.0, -3.0], [2.0, 0.5]]) == 3.0
    assert max_norm(np.eye(4)) == 1.0
    assert max_norm(np.zeros((3, 3))) == 0.0


def test_max_norm_rejects_empty_and_nonfinite():
    with pytest.raises(DimensionError):
        max_norm(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(ValueError):
        as_matrix([[np.inf, 1.0]])


def test_max_norm_equals_columnwise_inf_norm():
    # max-norm is the 1 -> inf induced norm: max over basis vectors of ||B e_j||_inf
    rng = np.random.default_rng(11)
    for _ in range(20):
        b = rng.standard_normal((rng.integers(1, 6), rng.integers(1, 6)))
        assert max_norm(b) == max(np.abs(b[:, j]).max() for j in range(b.shape[1]))


def test_inf_to_one_norm_examples():
    assert inf_to_one_norm(np.eye(2)) == 2.0
    assert inf_to_one_norm(np.ones((2, 2))) == 4.0
    assert inf_to_one_norm([[-3.5]]) == 3.5


def _inf_to_one_brute(b):
    best = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=b.shape[1]):
        best = max(best, float(np.abs(b @ np.array(signs)).sum()))
    return best


def test_inf_to_one_norm_against_sign_enumeration_oracle():
    rng = np.random.default_rng(4)
    for _ in range(25):
        b = rng.standard_normal((rng.integers(1, 7), rng.integers(1, 7)))
        assert inf_to_one_norm(b) == pytest.approx(_inf_to_one_brute(b), rel=1e-12)


def test_inf_to_one_norm_cap():
    with pytest.raises(CapabilityError):
        inf_to_one_norm(np.ones((2, 26)))


def test_singular_values_examples():
    assert singular_values(np.diag([3.0, 1.0])) == pytest.approx([3.0, 1.0])
    assert singular_values([[0.0, 1.0], [1.0, 0.0]]) == pytest.approx([1.0, 1.0])
    assert singular_values(np.ones((2, 2))) == pytest.approx([2.0, 0.0], abs=1e-15)


def test_singular_values_permutation_invariant():
    rng = np.random.default_rng(21)
    for _ in range(10):
        a = rng.standard_normal((6, 5))
        p = rng.permutation(6)
        q = rng.permutation(5)
        s = singular_values(a)
        assert singular_values(a[p][:, q]) == pytest.approx(s, rel=1e-10)


def test_classify_examples():
    c = classify(np.array([[2.0, 1.0], [0.0, 3.0]]))
    assert c.is_strictly_dd and c.is_doubly_dd and not c.is_spsd

    c = classify(np.array([[2.0, -1.0], [-1.0, 2.0]]))
    # eigenvalues 1 and 3 from the characteristic polynomial
    assert c.is_spsd and c.is_doubly_dd

    c = classify(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert not (c.is_spsd or c.is_dd or c.is_strictly_dd or c.is_doubly_dd)
    assert c.is_symmetric


def test_classify_flag_implications():
    rng = np.random.default_rng(3)
    for _ in range(30):
        a = rng.standard_normal((4, 4))
        a += np.diag(rng.uniform(0, 4, size=4))
        c = classify(a)
        if c.is_strictly_dd:
            assert c.is_dd
        if c.is_doubly_dd:
            assert c.is_dd
        if c.is_spsd:
            assert c.is_symmetric


def test_classify_invariant_under_symmetric_permutation():
    rng = np.random.default_rng(9)
    from crossvol import gallery

    for seed in range(5):
        a = gallery.random_dd(6, seed=seed)
        p = rng.permutation(6)
        assert classify(a[np.ix_(p, p)]) == classify(a)
    for seed in range(5):
        a = gallery.random_spsd(6, seed=seed)
        p = rng.permutation(6)
        assert classify(a[np.ix_(p, p)]) == classify(a)


def test_classify_needs_square():
    with pytest.raises(DimensionError):
        classify(np.ones((2, 3)))


def test_matrix_text_round_trip():
    rng = np.random.default_rng(17)
    a = rng.standard_normal((4, 3)) * 10.0 ** rng.integers(-8, 8, size=(4, 3))
    buf = io.StringIO()
    write_matrix(a, buf, comment="round trip")
    buf.seek(0)
    assert np.array_equal(read_matrix(buf), a)


def test_matrix_text_accepts_comments(tmp_path):
    path = tmp_path / "m.mat"
    path.write_text("# a comment\n# another\n2 2\n1 2\n3 4\n")
    assert np.array_equal(read_matrix(path), [[1.0, 2.0], [3.0, 4.0]])


@pytest.mark.parametrize("text", [
    "",
    "2\n1 2\n",
    "2 2\n1 2\n",
    "2 2\n1 2\n3 x\n",
    "2 2\n1 2 3\n4 5 6\n",
    "0 2\n",
])
def test_matrix_text_rejects_malformed(text):
    with pytest.raises(ValueError):
        read_matrix(io.StringIO(text))
