import pytest
from hypothesis import given
from hypothesis import strategies as st

from lparam.series import SeriesRing, invert, monomials_below, series_ring, trunc_mul


def test_examples():
    R = series_ring(("t",), 2)
    t = R.var("t")
    assert trunc_mul(R.one() + t, R.one() - t) == R.one()
    assert trunc_mul(t, t).is_zero()
    R3 = series_ring(("t1", "t2"), 3)
    f = R3.one() + R3.var(0) + R3.var(1)
    expect = R3.from_dict({(0, 0): 1, (1, 0): 2, (0, 1): 2, (2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert trunc_mul(f, f) == expect


def test_mismatch_rejected():
    a = series_ring(("t",), 2).one()
    b = series_ring(("s",), 2).one()
    with pytest.raises(ValueError):
        trunc_mul(a, b)
    with pytest.raises(ValueError):
        trunc_mul(a, series_ring(("t",), 3).one())


def test_units_and_monomials():
    R = series_ring(("a", "b"), 3)
    assert (R.const(3) + R.var(0)).is_unit()
    assert not R.var(1).is_unit()
    assert len(monomials_below(2, 3)) == 6
    assert R.monomial((1, 1)).order() == 2
    assert R.monomial((2, 1)).is_zero()
    g = R.var(0) * (R.one() + R.var(1))
    assert g.divide_by_monomial((1, 0)).truncate(2) == (R.one() + R.var(1)).truncate(2)


def test_json_roundtrip():
    R = series_ring(("x", "y"), 4)
    f = R.from_dict({(0, 0): "1/2", (1, 2): -3, (2, 0): 5})
    assert type(f).from_json(R, f.to_json()) == f


def test_truncate_lift():
    R4 = series_ring(("x",), 4)
    f = R4.from_dict({(0,): 1, (1,): 2, (3,): 7})
    g = f.truncate(2)
    assert g.ring.k == 2 and g.coeff((1,)) == 2
    assert g.lift(R4).coeff((3,)) == 0


coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def series(R: SeriesRing):
    return st.lists(coef, min_size=len(R.monomials), max_size=len(R.monomials)).map(
        lambda cs: R.from_dict(dict(zip(R.monomials, cs))))


R2 = series_ring(("t1", "t2"), 4)


@given(series(R2), series(R2))
def test_commutative(a, b):
    assert a * b == b * a


@given(series(R2), series(R2), series(R2))
def test_associative_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series(R2), st.integers(1, 4))
def test_inverse_property(f, k):
    f = f.truncate(k) if k < 4 else f
    if not f.is_unit():
        return
    assert trunc_mul(f, invert(f)) == f.ring.one()


@given(series(R2), series(R2))
def test_truncation_is_a_ring_map(a, b):
    assert (a * b).truncate(2) == a.truncate(2) * b.truncate(2)
