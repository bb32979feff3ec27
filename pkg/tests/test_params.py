import random
from math import factorial

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from lparam.exact import QSpec, RatMatrix
from lparam.params import (ParameterError, Partition, PhiNPoint, borel_component_audit, chain_decompose,
                           chain_point, check_relation, component_support, count_stable_flags, jordan_type,
                           partition_leq, partitions, random_invertible, random_point, roundtrip_ok,
                           stable_flags, stable_flags_bruteforce, tangent_dim)

Q2 = QSpec.from_q(2)


def pt(vals, edges=()):
    return PhiNPoint.diagonal(vals, edges, Q2)


def test_check_relation():
    assert check_relation(pt((1, 2), [(1, 2)]))
    assert check_relation(PhiNPoint.make([[1, 1], [0, 3]], None, Q2))
    assert not check_relation(pt((1, 3), [(1, 2)]))
    with pytest.raises(ZeroDivisionError):
        check_relation(PhiNPoint.make([[1, 2], [2, 4]], None, Q2))


def test_jordan_type():
    assert jordan_type(pt((1, 2, 4), [(1, 2), (2, 3)])) == (3,)
    assert jordan_type(pt((1, 2, 4))) == (1, 1, 1)
    assert jordan_type(pt((1, 2, 4), [(1, 2)])) == (2, 1)
    with pytest.raises(ParameterError):
        jordan_type(PhiNPoint.make(RatMatrix.identity(2), RatMatrix.identity(2), Q2))


def test_partition_order():
    assert partition_leq((3,), (2, 1))
    assert partition_leq((2, 1), (1, 1, 1))
    assert not partition_leq((1, 1, 1), (2, 1))
    with pytest.raises(ValueError):
        partition_leq((2,), (1, 1, 1))
    assert component_support((2, 1)) == {(2, 1), (1, 1, 1)}
    assert component_support((3,)) == set(partitions(3))
    assert component_support((1, 1)) == {(1, 1)}
    assert Partition((2, 1, 1)).transpose() == (3, 1)
    assert len(partitions(5)) == 7


def test_chain_decompose():
    cd = chain_decompose(pt((1, 2, 4), [(1, 2), (2, 3)]))
    assert [(c.head, c.length) for c in cd.chains] == [(4, 3)]
    cd = chain_decompose(pt((1, 2)))
    assert [(c.head, c.length) for c in cd.chains] == [(2, 1), (1, 1)]
    p = pt((1, 2, 4), [(2, 3)])
    cd = chain_decompose(p)
    assert [(c.head, c.length) for c in cd.chains] == [(4, 2), (1, 1)]
    assert roundtrip_ok(p, cd)
    with pytest.raises(ParameterError):
        chain_decompose(pt((1, 1)))


def test_stable_flags_examples():
    f = stable_flags(pt((1, 2), [(1, 2)]))
    assert [x.perm for x in f] == [(0, 1)] and f[0].unr == (1, 2)
    assert len(stable_flags(pt((1, 2)))) == 2
    f = stable_flags(pt((1, 2, 4), [(2, 3)]))
    assert len(f) == 3
    assert all(x.perm.index(1) < x.perm.index(2) for x in f)


def _sympy_tangent(p: PhiNPoint) -> int:
    n = p.n
    P = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"p{i}_{j}"))
    M = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"n{i}_{j}"))
    F = P * M - M * P / sp.Rational(int(p.q.numerator), int(p.q.denominator))
    J = sp.Matrix(list(F)).jacobian(list(P) + list(M))
    sub = {}
    for i in range(n):
        for j in range(n):
            sub[P[i, j]] = sp.Rational(str(p.phi[i, j]))
            sub[M[i, j]] = sp.Rational(str(p.nil[i, j]))
    return 2 * n * n - J.subs(sub).rank()


def test_tangent_dim_examples():
    assert tangent_dim(pt((1, 2, 4), [(1, 2), (2, 3)])) == 9
    assert tangent_dim(pt((1, 2), [(1, 2)])) == 4
    # component intersection; frozen from the symbolic Jacobian
    p = pt((1, 2, 4))
    assert tangent_dim(p) == 11 == _sympy_tangent(p)


def test_borel_audit_examples():
    a = borel_component_audit(3, 3)
    assert (a.dim_B, a.component_dim, a.verdict) == (45, 46, "not equidimensional")
    assert a.formula_dim == 46 and a.stabilizer_dim == 3 * 3 * 4 // 2
    a = borel_component_audit(1, 2)
    assert (a.component_dim, a.dim_B, a.verdict) == (3, 3, "no excess")
    a = borel_component_audit(2, 4)
    assert a.excess == 0 and a.component_dim == 1 + a.dim_B
    with pytest.raises(ValueError):
        borel_component_audit(0, 2)


def test_json_roundtrip():
    p = pt((1, 2, 4), [(2, 3)])
    d = p.to_json()
    assert d["q"] == "2/1" and d["q_sqrt"] is None
    assert PhiNPoint.from_json(d) == p
    p = chain_point([(1, 2)], q_sqrt=2)
    assert PhiNPoint.from_json(p.to_json()) == p
    assert p.to_json()["phi"][1][1] == "1/4"


seeds = st.integers(0, 10**6)


@given(seeds, st.integers(1, 5))
def test_random_points_valid(seed, n):
    p = random_point(n, random.Random(seed))
    assert check_relation(p)
    flags = stable_flags(p)
    assert 1 <= len(flags) <= factorial(n)
    assert len(flags) == count_stable_flags(p)
    assert roundtrip_ok(p, chain_decompose(p))


@given(seeds, st.integers(1, 4))
def test_flags_match_bruteforce(seed, n):
    p = random_point(n, random.Random(seed))
    assert sorted(stable_flags(p)) == sorted(stable_flags_bruteforce(p))


@given(seeds, st.integers(1, 5))
def test_flag_count_extremes(seed, n):
    rng = random.Random(seed)
    full = chain_point([(1, n)])
    assert len(stable_flags(full.conjugate(random_invertible(n, rng)))) == 1
    assert len(stable_flags(chain_point([(1, n)], linked=False))) == factorial(n)


@given(seeds, st.integers(1, 4))
def test_jordan_type_conjugation_invariant(seed, n):
    rng = random.Random(seed)
    p = random_point(n, rng, conjugate=False)
    assert jordan_type(p.conjugate(random_invertible(n, rng))) == jordan_type(p)
    assert jordan_type(p) == chain_decompose(p).jordan_type()


@given(st.integers(1, 6), st.data())
def test_component_support_monotone(n, data):
    ps = partitions(n)
    a = data.draw(st.sampled_from(ps))
    b = data.draw(st.sampled_from(ps))
    if partition_leq(a, b):
        assert component_support(b) <= component_support(a)
    assert a in component_support(a)


@given(seeds, st.integers(1, 3))
def test_tangent_lower_bound(seed, n):
    p = random_point(n, random.Random(seed))
    assert tangent_dim(p) >= n * n


def test_tangent_equality_on_generic_points():
    rng = random.Random(7)
    for _ in range(4):
        for n in (2, 3):
            p = chain_point([(1, n)]).conjugate(random_invertible(n, rng))
            assert tangent_dim(p) == n * n
