import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lparam.exact import QSpec, RatMatrix
from lparam.hecke import perm as P
from lparam.hecke.algebra import elementary_symmetric
from lparam.hecke.homs import e_st_element
from lparam.hecke.modules import (CentralCharacter, is_simple, jacquet_characters,
                                  principal_series, steinberg_module, steinberg_quotient_check)
from lparam.hecke.smat import SMat
from lparam.hecke.standard import (Segment, admissible_orders, kudla_order, linked, precedes, segments_of,
                                   standard_module)
from lparam.params import PhiNPoint, random_point, stable_flags

Q2 = QSpec.from_q(2)


def test_principal_series_small():
    cc = CentralCharacter.chain(1, 2, 2)
    q = cc.qspec.q
    M = principal_series((2, 1), cc, k=1)
    assert M.dim == 2 and M.relations_ok()
    assert sorted(jacquet_characters(M)) == sorted([(1 / q, 1), (1, 1 / q)])
    M1 = principal_series((1,), CentralCharacter.chain(5, 1, 2), k=1)
    assert M1.dim == 1 and jacquet_characters(M1) == [(5,)]


def test_principal_series_central_character_n3():
    cc = CentralCharacter.chain(1, 3, 2)
    M = principal_series((1, 2, 3), cc, k=2)
    assert M.dim == 6 and M.relations_ok()
    chi = cc.deformed(2)
    for j in (1, 2, 3):
        expect = M.base.zero()
        for S in combinations(range(3), j):
            term = M.base.one()
            for i in S:
                term = term * chi[i]
            expect = expect + term
        assert M.act(elementary_symmetric(3, j).element(M.alg)) == SMat.identity(M.base, 6).scale(expect)


def test_deformed_values():
    cc = CentralCharacter.chain(1, 3, 2)
    R = cc.base(3)
    t, s1, s2 = (R.var(v) for v in ("t", "s1", "s2"))
    q = cc.qspec.q
    assert cc.deformed(3) == (1 + t, (1 + t + s1).scale(1 / q), (1 + t + s1 + s2).scale(1 / q ** 2))


@pytest.mark.parametrize("w", list(permutations((1, 2, 3))))
def test_e_st_line_rank_one(w):
    cc = CentralCharacter.chain(1, 3, 2)
    M = principal_series(w, cc, k=2)
    E = M.act(e_st_element(M.alg))
    assert E @ E == E
    # an idempotent of closed-point rank 1: its image is free of rank 1 over A_k
    assert RatMatrix(E.constant_part()).rank() == 1


def test_steinberg_modules():
    St = steinberg_module(1, 2)
    q = QSpec(2).q
    assert St.dim == 1
    assert St.act_T(P.simple(1, 2)).constant_part() == [[-1]]
    assert jacquet_characters(St) == [(1 / q, 1)]
    assert jacquet_characters(steinberg_module(3, 1)) == [(3,)]
    r = steinberg_quotient_check(1, 3)
    assert r == {"induced_dim": 6, "quotient_dim": 1, "matches": True}
    assert steinberg_quotient_check(1, 2)["matches"]
    D = steinberg_module(1, 3, deformed=True, k=3)
    assert D.dim == 1 and D.relations_ok()


def test_standard_examples():
    S = standard_module(PhiNPoint.diagonal((1, 2), (), Q2))
    assert S.dim == 2 and sorted(jacquet_characters(S)) == [(1, 2), (2, 1)]
    S = standard_module(PhiNPoint.diagonal((1, 2), [(1, 2)], Q2))
    assert S.dim == 1 and S.segments == (Segment(2, 2),)
    p = PhiNPoint.diagonal((1, 2, 4), [(2, 3)], Q2)
    S = standard_module(p)
    assert S.dim == 3
    assert sorted(jacquet_characters(S)) == sorted(f.unr for f in stable_flags(p))
    assert is_simple(standard_module(PhiNPoint.diagonal((1, 2, 4), [(1, 2), (2, 3)], Q2)))


def test_segments():
    q = 2
    a, b = Segment(4, 2), Segment(1, 1)
    assert linked(a, b, q) and precedes(b, a, q) and not precedes(a, b, q)
    assert not linked(Segment(4, 1), Segment(1, 1), q)
    assert kudla_order([b, a], q) == [a, b]
    assert kudla_order([Segment(3, 1), Segment(1, 1)], q) == [Segment(3, 1), Segment(1, 1)]


def test_repeated_eigenvalues_rejected():
    from lparam.params import ParameterError
    with pytest.raises(ParameterError):
        standard_module(PhiNPoint.diagonal((1, 1), (), Q2))


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_jacquet_equals_stable_flags(seed, n):
    p = random_point(n, random.Random(seed))
    S = standard_module(p)
    flags = stable_flags(p)
    assert sorted(jacquet_characters(S)) == sorted(f.unr for f in flags)
    assert S.dim == len(flags)
    assert S.relations_ok()


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_admissible_orders_isomorphic(seed, n):
    p = random_point(n, random.Random(seed), conjugate=False)
    orders = admissible_orders(segments_of(p), p.q)
    assert orders
    chars = {tuple(sorted(jacquet_characters(standard_module(p, o)))) for o in orders[:2]}
    assert len(chars) == 1
