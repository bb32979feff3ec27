from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from lparam.exact import (QSpec, RatMatrix, WeightVector, as_qspec, q_str, rank_kernel, rref, span_rank,
                          to_q)
from lparam.graded import graded_slice, hilbert_table_json, slice_indices

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m)))


def test_to_q_and_serialization():
    assert to_q("3/6") == mpq(1, 2)
    assert to_q(Fraction(-2, 4)) == mpq(-1, 2)
    assert q_str(3) == "3/1"
    assert q_str(mpq(-1, 2)) == "-1/2"
    with pytest.raises(TypeError):
        to_q(0.5)


def test_qspec():
    assert QSpec(2).q == 4
    assert QSpec.from_q(9).q_sqrt == 3
    qs = QSpec.from_q(2)
    assert qs.q == 2 and qs.q_sqrt is None
    assert as_qspec(2) == QSpec(2)
    for bad in (1, -1):
        with pytest.raises(ValueError):
            QSpec(bad)
    with pytest.raises(ValueError):
        QSpec(0)


def test_resonance_guard():
    qs = QSpec(2)
    assert qs.resonances([4, 1]) == {(0, 1, 1)}
    assert qs.resonance_guard([4, 1], declared={(0, 1, 1)})
    assert not qs.resonance_guard([4, 1])
    assert qs.resonance_guard([1, 3, 9])


def test_rank_kernel_examples():
    assert rank_kernel(RatMatrix.identity(2)) == (2, [])
    r, ker = rank_kernel(RatMatrix.zeros(3, 4))
    assert r == 0 and len(ker) == 4
    r, ker = rank_kernel(RatMatrix([[1, 2], [2, 4]]))
    assert r == 1 and len(ker) == 1
    v = ker[0]
    # span{(2, -1)}
    assert v[0] == -2 * v[1] and v[1] != 0


def test_inverse_and_singular():
    m = RatMatrix([[1, 2], [3, 4]])
    assert m @ m.inverse() == RatMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        RatMatrix([[1, 2], [2, 4]]).inverse()


@given(matrices())
def test_rank_nullity_and_kernel(rows):
    m = RatMatrix(rows)
    r, ker = rank_kernel(m)
    assert r + len(ker) == m.ncols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert span_rank(ker) == len(ker)


@given(matrices())
def test_rank_transpose(rows):
    m = RatMatrix(rows)
    assert m.rank() == m.transpose().rank()


@given(matrices(4, 4), matrices(4, 4))
def test_rank_of_product_bounded(a, b):
    A, B = RatMatrix(a), RatMatrix(b)
    if A.ncols != B.nrows:
        return
    assert (A @ B).rank() <= min(A.rank(), B.rank())


def test_rref_pivots():
    red, piv = rref([{0: to_q(2), 1: to_q(4)}, {0: to_q(1), 1: to_q(2)}, {1: to_q(1)}])
    assert piv == [0, 1]
    assert red[0][0] == 1


def test_weight_vector():
    a1, a2 = WeightVector.alpha(1, 3), WeightVector.alpha(2, 3)
    assert a1 == (1, -1, 0) and a2 == (0, 1, -1)
    assert a1 + a2 == (1, 0, -1)
    assert (2 * a1 - a1) == a1
    assert WeightVector.zero(3).is_zero()


def _monomials(names, bound, ann):
    """Monomials of Q[names]/(ann) below bound, labelled by (degree, weight)."""
    from itertools import product

    out = []
    for e in product(range(bound + 1), repeat=len(names)):
        if sum(e) > bound:
            continue
        if any(all(e[names.index(v)] >= 1 for v in a) for a in ann):
            continue
        w = [0, 0]
        if "u1" in names:
            w = [e[names.index("u1")], -e[names.index("u1")]]
        out.append((sum(e), tuple(w)))
    return out


def test_graded_slice_examples():
    a1 = WeightVector.alpha(1, 2)
    z = WeightVector.zero(2)
    lab = _monomials(["u1"], 3, [])
    assert graded_slice(lab, 1, a1).nrows == 1
    assert graded_slice(lab, 1, z).nrows == 0
    lab = _monomials(["s1", "u1"], 3, [("s1", "u1")])
    assert graded_slice(lab, 2, z).nrows == 1


def test_graded_slice_of_matrix():
    labels = [(0, (0,)), (1, (0,)), (1, (1,))]
    m = RatMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    s = graded_slice(labels, 1, (0,), m)
    assert s == RatMatrix([[5]])
    assert slice_indices(labels, 1, (1,)) == [2]
    assert hilbert_table_json({(1, (0,)): 2, (0, (0,)): 0}) == [{"degree": 1, "weight": [0], "dim": 2}]
