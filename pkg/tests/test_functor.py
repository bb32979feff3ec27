import json

import pytest

from lparam.exact import QSpec, WeightVector, to_q
from lparam.functor.dictionary import DictionaryError, dictionary, r_functor, recognize, resolve_point, sign_equivalent
from lparam.functor.verify import (
    RunConfig,
    induction_points,
    verify_gl3_stalks,
    verify_hom_rank,
    verify_induction_compat,
    verify_line_bundle,
    verify_steinberg_image,
)
from lparam.hecke.complexes import c_complex, ll_point
from lparam.local.complexes import homology, steinberg_locus, steinberg_resolution
from lparam.params import PhiNPoint, chain_point
from lparam.series import SeriesRing


def test_gl2_dictionary_terms():
    G = dictionary(c_complex(2, 1, 3, 2))
    assert sorted(G.degrees) == [-1, 0]
    top, low = G.terms[0].summands, G.terms[-1].summands
    assert [(c.ann, c.shift_deg) for c in top] == [((), 0)]
    u1 = tuple(1 if nm == "u1" else 0 for nm in G.ring.names)
    s1 = tuple(1 if nm == "s1" else 0 for nm in G.ring.names)
    assert [(c.ann, c.shift_deg) for c in low] == [((u1,), 1)]
    assert G.diffs[-1].entries == {(0, 0): {s1: to_q(1)}}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cube_image_is_local_resolution(n):
    G = dictionary(c_complex(n, 1, 3, 2))
    assert sign_equivalent(G, steinberg_resolution(n))


def test_sign_equivalence_rejects_rescaled_entry():
    C = c_complex(2, 1, 3, 2)
    assert not sign_equivalent(dictionary(C, {(-1, 0, 0): to_q(2)}), steinberg_resolution(2))
    assert sign_equivalent(dictionary(C, {(-1, 0, 0): to_q(-1)}), steinberg_resolution(2))


def test_non_scalar_coefficient_rejected():
    C = c_complex(2, 1, 3, 2)
    R = SeriesRing(("s1",), 3)
    with pytest.raises(DictionaryError):
        dictionary(C, {(-1, 0, 0): R.one() + R.var("s1")})


def test_steinberg_functor_output():
    out = r_functor(c_complex(3, 1, 3, 2))
    assert out.homology.nonzero_degrees() == [0]
    assert sorted(out.identified["annihilator"]) == ["s1", "s2"]
    target = steinberg_locus(out.complex.ring).hilbert_table(6)
    assert out.homology.table(0) == target
    json.dumps(out.to_json())


@pytest.mark.parametrize("Z,deg,alphas", [((), 0, ()), ((1,), -1, (1,)), ((2,), -1, (2,)), ((1, 2), -2, (1, 2))])
def test_simple_modules_on_full_chain(Z, deg, alphas):
    out = r_functor(ll_point(3, frozenset(Z), 1, 2), "simple")
    assert out.homology.nonzero_degrees() == [deg]
    wt = WeightVector.zero(3)
    for i in alphas:
        wt = wt + WeightVector.alpha(i, 3)
    assert out.identified["generator_weight"] == list(wt)
    assert out.identified["generator_degree"] == -deg
    assert sorted(out.identified["annihilator"]) == ["s1", "s2", "t"]


@pytest.mark.parametrize("edge,alpha", [((1, 2), 1), ((2, 3), 2)])
def test_diag_124_line_bundle(edge, alpha):
    # links are numbered along the chain 4 -> 2 -> 1, so E12 leaves link 1 unjoined
    p = PhiNPoint.diagonal([1, 2, 4], [edge], QSpec.from_q(2))
    out = r_functor(p, "simple")
    assert out.homology.nonzero_degrees() == [-1]
    assert out.identified["generator_weight"] == list(WeightVector.alpha(alpha, 3))


def test_generic_standard_is_free():
    out = r_functor(chain_point([(1, 1), (3, 1)], 2), "standard")
    assert out.identified == {"degree": 0, "generator_degree": 0, "generator_weight": [0, 0],
                              "annihilator": [], "annihilator_exps": []}


def test_resolve_point_kinds():
    p = chain_point([(1, 2)], 2)
    assert resolve_point(p, "standard").degrees() == resolve_point(p, "simple").degrees()
    with pytest.raises(ValueError):
        resolve_point(p, "bogus")
    with pytest.raises(TypeError):
        r_functor("not a point")


def test_recognize_needs_single_degree():
    G = steinberg_resolution(2)
    assert recognize(homology(G, 4))["degree"] == 0


# drivers --------------------------------------------------------------------

@pytest.fixture
def cfg():
    return RunConfig()


@pytest.mark.parametrize("n", [2, 3])
def test_verify_steinberg_image(cfg, n):
    res = verify_steinberg_image(cfg, n)
    assert res["ok"], res
    assert all(t["informative"] for t in res["lift_tests"])


def test_verify_line_bundle(cfg):
    assert verify_line_bundle(cfg, 3, {1})["ok"]


@pytest.mark.parametrize("case,mult", [("d1", {"-": 1, "1": 1}), ("d2", {"1": 1, "2": 1}), ("generic", {"-": 2})])
def test_verify_gl3_stalks(cfg, case, mult):
    res = verify_gl3_stalks(cfg, case)
    assert res["ok"] and res["m_P0"] == 2
    assert res["multiplicities"] == mult
    assert len(res["stalk_summands"]) == 2


def test_verify_hom_rank_n2(cfg):
    res = verify_hom_rank(cfg, 2)
    assert res["ok"] and res["pairs"] == 4 and res["triples"] == 8


def test_verify_induction_first_point(cfg):
    res = verify_induction_compat(cfg, induction_points()[1])
    assert res["ok"] and res["identification_scalars"] == ["1/1"]
