from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lparam.exact import WeightVector
from lparam.local.complexes import (GradedComplex, GradingError, cube_complex, defect_monomial, g_map, homology,
                                    i_set, line_bundle, steinberg_locus, steinberg_resolution,
                                    subscheme_module)
from lparam.local.ext import ext_table, invariants
from lparam.local.ring import (LocalModelModule, ModuleMap, local_ring, poly, poly_mul, poly_reduce,
                               single_chain_ring)


def _hilbert_oracle(n_t, n_u, bound, n):
    """Hilbert table of Q[t's][u_1..u_{n_u}] by direct enumeration."""
    out = {}
    for t in range(bound):
        for e in product(range(bound), repeat=n_u):
            d = t + sum(e)
            if d >= bound:
                continue
            w = WeightVector.zero(n)
            for i, k in enumerate(e, start=1):
                w = w + WeightVector.alpha(i, n) * k
            key = (d, tuple(w))
            out[key] = out.get(key, 0) + 1
    return out


def test_ring_layout():
    R = single_chain_ring(3)
    assert R.names == ("t", "s1", "s2", "u1", "u2")
    assert R.weight(R.u(2)) == WeightVector.alpha(2, 3)
    assert not R.is_standard(R.mono(s1=1, u1=1))
    with pytest.raises(ValueError):
        local_ring((0,))
    R2 = local_ring((2, 1))
    assert R2.links == (1,) and R2.nt == 2


def test_subscheme_examples():
    R = single_chain_ring(2)
    assert subscheme_module(R, (1, 2)).summands[0].ann == (R.u(1),)
    assert subscheme_module(R, (2, 1)).summands[0].ann == ()
    R3 = single_chain_ring(3)
    assert subscheme_module(R3, (2, 1, 3)).summands[0].ann == (R3.u(2),)
    assert i_set((3, 2, 1)) == frozenset()


def test_g_map_examples():
    R = single_chain_ring(2)
    comp = g_map(R, (2, 1), (1, 2)).compose(g_map(R, (1, 2), (2, 1)))
    assert comp.entries == {(0, 0): poly(R.s(1))}
    assert g_map(R, (1, 2), (1, 2)).entries == {(0, 0): poly(R.mono())}
    R3 = single_chain_ring(3)
    a, b = frozenset({1}), frozenset({2})
    comp = g_map(R3, b, a).compose(g_map(R3, a, b))
    assert comp.entries == {(0, 0): poly(R3.mono(s1=1, s2=1))}


def _triples(n):
    ws = list(permutations(range(1, n + 1)))
    return [(a, b, c) for a in ws for b in ws for c in ws]


@pytest.mark.parametrize("n", [2, 3])
def test_g_triple_defects(n):
    R = single_chain_ring(n)
    for w, w2, w3 in _triples(n):
        I1, I2, I3 = i_set(w), i_set(w2), i_set(w3)
        g12, g23, g13 = g_map(R, w, w2), g_map(R, w2, w3), g_map(R, w, w3)
        assert g12.check_homogeneous() and g12.check_well_defined()
        assert g12.degree == len(I1 - I2)
        lhs = g23.compose(g12).entries.get((0, 0), {})
        defect = defect_monomial(R, I1, I2, I3)
        assert min(defect) >= 0
        rhs = poly_reduce(R, poly_mul(poly(defect), g13.entries.get((0, 0), {})), [R.u(i) for i in I3])
        assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3])
def test_hom_free_rank_one(n):
    R = single_chain_ring(n)
    ws = list(permutations(range(1, n + 1)))
    for w in ws:
        for w2 in ws:
            T = ext_table(subscheme_module(R, w), subscheme_module(R, w2), i_max=0, degree_bound=4,
                          require_period=False)
            info = T.cyclic(0)
            assert info is not None
            assert info["generator_degree"] == len(i_set(w) - i_set(w2))
            # the generator prod s_i (i in I_w - I_w') is also killed by those u_i
            assert sorted(info["annihilator"]) == sorted(f"u{i}" for i in i_set(w) | i_set(w2))


def test_homology_examples():
    C = steinberg_resolution(2)
    assert C.ranks() == {-1: 1, 0: 1}
    H = homology(C, 5)
    assert H.table(-1) == {}
    R = C.ring
    assert H.table(0) == _hilbert_oracle(1, 1, 5, 2)
    assert H.cyclic[0]["annihilator"] == ["s1"]
    Z = GradedComplex(R, {0: LocalModelModule(R, ())})
    assert homology(Z, 4).nonzero_degrees() == []
    K = cube_complex(R, [1], base_ann=[R.u(1)])
    HK = homology(K, 5)
    assert HK.table(-1) == {}
    assert HK.table(0) == {(d, (0, 0)): 1 for d in range(5)}


def test_steinberg_resolution_n1_n3():
    C1 = steinberg_resolution(1)
    assert C1.ranks() == {0: 1} and C1.terms[0].summands[0].ann == ()
    C = steinberg_resolution(3)
    assert C.ranks() == {-2: 1, -1: 2, 0: 1}
    assert C.d_squared_zero() and C.check_homogeneous()
    H = homology(C, 5)
    assert H.nonzero_degrees() == [0]
    assert H.table(0) == _hilbert_oracle(1, 2, 5, 3)
    assert set(H.cyclic[0]["annihilator"]) == {"s1", "s2"}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_steinberg_euler_characteristic(n):
    C = steinberg_resolution(n)
    bound = 4 if n < 4 else 3
    assert C.euler_table(bound) == steinberg_locus(C.ring).hilbert_table(bound)


def test_inhomogeneous_map_rejected():
    R = single_chain_ring(2)
    a = subscheme_module(R, vanishing_u={1})
    b = subscheme_module(R, vanishing_u=set())
    bad = ModuleMap(a, b, {(0, 0): poly(R.s(1))})  # declared degree 0, really 1
    with pytest.raises(GradingError):
        homology(GradedComplex(R, {-1: a, 0: b}, {-1: bad}), 3)


def test_ext_gl2():
    R = single_chain_ring(2)
    Yu = subscheme_module(R, vanishing_u={1})
    Y = subscheme_module(R, vanishing_u=set())
    T = ext_table(Yu, Y, 6, 5)
    assert T.cyclic(0)["annihilator"] == ["u1"]
    assert all(T.dims(i) == {} for i in range(1, 7))
    T = ext_table(Yu, Yu, 6, 5)
    assert T.cyclic(0)["annihilator"] == ["u1"] and T.cyclic(0)["generator_degree"] == 0
    a1 = WeightVector.alpha(1, 2)
    for i in range(1, 7):
        if i % 2:
            assert T.dims(i) == {}
        else:
            info = T.cyclic(i)
            assert sorted(info["annihilator"]) == ["s1", "u1"]
            assert tuple(info["generator_weight"]) == tuple(a1 * (-i // 2))
    cert = T.resolution.certificate()
    assert cert["period"] == 2
    inv = invariants(T)
    assert inv[0] == {(d, (0, 0)): d + 1 for d in range(5)}
    assert all(inv[i] == {} for i in range(1, 7))
    T = ext_table(Y, Y, 3, 5)
    assert T.cyclic(0)["annihilator"] == [] and T.resolution.finite
    assert invariants(T)[0] == {(d, (0, 0)): d + 1 for d in range(5)}


def test_invariants_of_twisted_free_module():
    R = single_chain_ring(2)
    M = LocalModelModule.cyclic(R, [], 0, WeightVector.alpha(1, 2))
    H = homology(GradedComplex(R, {0: M}), 4)
    assert invariants(H)[0] == {}


def test_line_bundles():
    L = line_bundle(3, ())
    assert L.l_y == 0 and L.module.summands[0].shift_weight.is_zero()
    L = line_bundle(3, {2})
    assert L.l_y == 1 and L.module.summands[0].shift_weight == WeightVector.alpha(2, 3)
    L = line_bundle(4, {1, 2, 3})
    assert L.l_y == 3
    assert L.module.summands[0].shift_weight == (1, 0, 0, -1)
    with pytest.raises(ValueError):
        line_bundle(3, {3})


patterns = st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n - 1))))


@given(patterns)
def test_ext0_contains_identity(data):
    n, I = data
    R = single_chain_ring(n)
    M = subscheme_module(R, vanishing_u=I)
    T = ext_table(M, M, i_max=0, degree_bound=3, require_period=False)
    info = T.cyclic(0)
    assert info["generator_degree"] == 0 and not any(info["generator_weight"])


@given(patterns, patterns)
def test_hilbert_additive_under_sums(a, b):
    if a[0] != b[0]:
        return
    R = single_chain_ring(a[0])
    M = subscheme_module(R, vanishing_u=a[1])
    N = subscheme_module(R, vanishing_u=b[1])
    hm, hn, hs = M.hilbert_table(4), N.hilbert_table(4), (M + N).hilbert_table(4)
    for k in set(hm) | set(hn):
        assert hs.get(k, 0) == hm.get(k, 0) + hn.get(k, 0)
