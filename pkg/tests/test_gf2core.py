"""Tests for the GF(2) linear algebra core."""

import numpy as np
import pytest

from trirep.exceptions import DependentBasisError, IndexRangeError, LengthMismatchError
from trirep.gf2core import (
    BitMat,
    BitVec,
    express,
    nullspace,
    puncture,
    rank,
    rank_of,
    span_equal,
    xor,
    xor_fold,
)
from trirep.simcomplex import incidence_matrix, sphere_sn


def v(text):
    return BitVec.from_string(text)


# Test bit vector construction and 1-based indexing
def test_bitvec_indexing():
    x = v("10110")
    assert x.length == 5
    assert [x[i] for i in range(1, 6)] == [1, 0, 1, 1, 0]
    assert x.support() == [1, 3, 4]
    assert x.weight == 3
    assert x.to_string() == "10110"
    assert BitVec.from_support(5, [1, 3, 4]) == x
    with pytest.raises(IndexRangeError):
        x[0]
    with pytest.raises(IndexRangeError):
        x[6]


# Test numpy interop
def test_numpy_round_trip():
    arr = np.array([[1, 0, 1], [0, 1, 1]])
    m = BitMat.from_array(arr)
    assert m.n_rows == 2 and m.n_cols == 3
    assert m.row(1) == v("101")
    assert (m.to_array() == arr).all()
    assert BitVec.from_array([0, 1, 1]) == v("011")


# Test rank on the trivial cases
def test_rank_trivial():
    assert rank(BitMat.zeros(0, 0)) == 0
    assert rank(BitMat.identity(3)) == 3
    assert rank(BitMat.zeros(2, 3)) == 0


# Test rank of the octahedron incidence matrix
def test_rank_octahedron():
    cx, _ = sphere_sn(0)
    m = incidence_matrix(cx)
    assert (m.n_rows, m.n_cols) == (12, 8)
    assert rank(m) == 7


# Test nullspace examples
def test_nullspace_examples():
    # a single triangle: every edge has degree one
    single = BitMat(3, 1, (1, 1, 1))
    assert nullspace(single) == []

    cx, _ = sphere_sn(0)
    kernel = nullspace(incidence_matrix(cx))
    assert kernel == [v("11111111")]

    assert len(nullspace(BitMat.zeros(2, 3))) == 3


# Test rank-nullity and that kernel vectors are annihilated
def test_rank_nullity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = BitMat.from_array(rng.integers(0, 2, size=(4, 7)))
        kernel = nullspace(m)
        assert rank(m) + len(kernel) == m.n_cols
        for x in kernel:
            assert not m.mul_vec(x)
        if kernel:
            assert rank_of(kernel) == len(kernel)


# Test span comparison
def test_span_equal():
    assert span_equal([v("110"), v("011")], [v("110"), v("101")])
    assert not span_equal([v("111")], [v("110")])
    assert span_equal([], [v("000")])
    with pytest.raises(LengthMismatchError):
        span_equal([v("11")], [v("110")])


# Test puncturing keeps the listed coordinates in order
def test_puncture():
    assert puncture([v("10110")], [1, 3, 4]) == [v("111")]
    assert puncture([v("10110")], [4, 2]) == [v("10")]
    assert puncture([], [1]) == []
    with pytest.raises(IndexRangeError):
        puncture([v("101")], [4])
    with pytest.raises(IndexRangeError):
        puncture([v("101")], [1, 1])


# Test puncturing is linear
def test_puncture_linear():
    a, b = v("110101"), v("011100")
    keep = [6, 1, 3]
    left = puncture([a ^ b], keep)[0]
    right = xor(*puncture([a, b], keep))
    assert left == right


# Test xor
def test_xor():
    assert xor(v("1100"), v("0110")) == v("1010")
    assert not xor(v("1011"), v("1011"))
    with pytest.raises(LengthMismatchError):
        xor(v("1"), v("10"))
    assert xor_fold([], 3) == v("000")


# Test express examples
def test_express():
    basis = [v("110"), v("011")]
    assert express(v("101"), basis) == v("11")
    assert express(v("111"), basis) is None
    assert express(v("000"), basis) == v("00")
    with pytest.raises(DependentBasisError):
        express(v("110"), [v("110"), v("110")])


# Test express round trip on random data
def test_express_round_trip():
    rng = np.random.default_rng(3)
    basis = [v("1000110"), v("0100101"), v("0010011"), v("0001111")]
    for _ in range(20):
        coeffs = rng.integers(0, 2, size=4)
        target = xor_fold([b for b, c in zip(basis, coeffs) if c], 7)
        indicator = express(target, basis)
        assert indicator is not None
        assert xor_fold([basis[i - 1] for i in indicator.support()], 7) == target
