from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lparam.functor.verify import RunConfig, verify_hom_rank
from lparam.hecke.homs import (ModuleCache, e_K_element, e_st_element, frobenius_hom, hom_space, i_set_on_links,
                               sylvester_dimension)
from lparam.hecke.modules import CentralCharacter, principal_series
from lparam.hecke.smat import SMat

CC2 = CentralCharacter.chain(1, 2, 2)
CC3 = CentralCharacter.chain(1, 3, 2)


def test_hom_rank_one_n2():
    M1, M2 = principal_series((1, 2), CC2, k=4), principal_series((2, 1), CC2, k=4)
    hs = hom_space(M1, M2)
    assert hs.rank == 1
    assert hs.certificate["route_sylvester"]["closed_point_dim"] == 1
    assert M1.is_hom_to(M2, hs.basis[0])


@pytest.mark.parametrize("w", list(permutations((1, 2, 3))))
def test_identity_in_endomorphisms(w):
    M = principal_series(w, CC3, k=1)
    F = hom_space(M, M).basis[0]
    c = F[0, 0]
    assert c.is_unit() and F == SMat.identity(M.base, M.dim).scale(c)


def test_composites_at_the_resonant_point():
    # undeformed: both composites vanish
    a, b = principal_series((1, 2), CC2, k=1), principal_series((2, 1), CC2, k=1)
    assert (frobenius_hom(b, a) @ frobenius_hom(a, b)).is_zero()
    assert (frobenius_hom(a, b) @ frobenius_hom(b, a)).is_zero()
    # deformed and normalized: s1 times the identity
    C = ModuleCache(CC2, 3)
    f, g = C.f_hat((1, 2), (2, 1)), C.f_hat((2, 1), (1, 2))
    s1 = f.matrix.ring.var("s1")
    I = SMat.identity(f.matrix.ring, 2)
    assert g.matrix @ f.matrix == I.scale(s1)
    assert f.matrix @ g.matrix == I.scale(s1)
    assert C.f_hat((1, 2), (1, 2)).matrix == I


def test_idempotent_elements():
    alg = principal_series((1, 2), CC2, k=1).alg
    q = alg.q
    assert alg.Ts(1) * e_K_element(alg) == e_K_element(alg).scale(q)
    assert alg.Ts(1) * e_st_element(alg) == -e_st_element(alg)


def test_i_sets():
    assert i_set_on_links((1, 2, 3), CC3.links) == frozenset({1, 2})
    assert i_set_on_links((3, 2, 1), CC3.links) == frozenset()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank_and_triple_scalars(n):
    r = verify_hom_rank(RunConfig(k=4), n)
    assert r["ok"], r
    assert r["pairs"] == len(list(permutations(range(n)))) ** 2


@settings(max_examples=12)
@given(st.sampled_from(list(permutations((1, 2, 3)))), st.sampled_from(list(permutations((1, 2, 3)))),
       st.integers(1, 3))
def test_frobenius_vs_sylvester(w, w2, k):
    M1, M2 = principal_series(w, CC3, k=k), principal_series(w2, CC3, k=k)
    F = frobenius_hom(M1, M2)
    assert M1.is_hom_to(M2, F)
    assert sylvester_dimension(M1, M2) == 1
