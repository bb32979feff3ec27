"""Verification drivers.  Each returns a Certificate comparing a computed
summary with the expected one; nothing here decides a verdict from a
single route when two are available."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from ..certificate import Certificate
from ..exact import WeightVector, as_qspec, q_str, to_q
from ..hecke import perm as P
from ..hecke.algebra import center_check, elementary_symmetric, is_central, make_hecke, relation_suite
from ..hecke.complexes import (
    FreeComplex,
    _cube,
    c_complex,
    cz_complex,
    exactness_report,
    label_for,
    levi_standard_complex,
    ll_point,
    ll_z_check,
    minimalize,
    point_data,
    standard_complex,
    steinberg_projection_check,
    top_cokernel_module,
)
from ..hecke.homs import ModuleCache, hom_space, i_set_on_links
from ..hecke.idempotents import check_laws, finite_idempotents, idempotent, idempotent_pairing, sign_line_check
from ..hecke.induction import identify_multiple, induced_realization
from ..hecke.modules import CentralCharacter, jacquet_characters
from ..hecke.standard import standard_module
from ..local.complexes import (
    defect_monomial,
    g_map,
    homology,
    line_bundle,
    steinberg_locus,
    steinberg_resolution,
    subscheme_module,
)
from ..local.ext import ext_table, invariants
from ..local.ring import ModuleMap, local_ring, poly, poly_mul, single_chain_ring
from ..params import (
    PhiNPoint,
    borel_component_audit,
    chain_point,
    partition_leq,
    partitions,
    random_point,
    stable_flags,
    tangent_dim,
)
from .dictionary import dictionary, hilbert_json, r_functor, sign_equivalent


@dataclass
class RunConfig:
    n: int | None = None
    q_sqrt: object = 2
    lam: object = 1
    k: int = 4
    degree_bound: int = 6
    i_max: int = 6
    seed: int = 0

    def to_json(self) -> dict:
        return {"n": self.n, "q_sqrt": q_str(to_q(self.q_sqrt)), "lambda": q_str(to_q(self.lam)), "k": self.k,
                "degree_bound": self.degree_bound, "i_max": self.i_max, "seed": self.seed}


def _cert(claim: str, cfg: RunConfig, computed: dict, expected: dict, ok: bool, t0: float,
          notes=()) -> Certificate:
    return Certificate(claim, CHECKS[claim].anchor, cfg.to_json(), computed, expected,
                       "pass" if ok else "fail", time.perf_counter() - t0, list(notes))


def _ann_set(info) -> set:
    return set(info.get("annihilator", [])) if info else set()


# 1 -------------------------------------------------------------------------

def verify_steinberg_image(cfg: RunConfig, n: int) -> dict:
    C = c_complex(n, cfg.lam, cfg.k, cfg.q_sqrt)
    R = C.realize()
    rep = exactness_report(C, margin=2, levels=range(2, cfg.k) if cfg.k >= 3 else [1])
    proj = steinberg_projection_check(n, cfg.lam, cfg.k, cfg.q_sqrt) if n > 1 else {"ok": True}
    G = dictionary(C)
    H = homology(G, cfg.degree_bound)
    ring = G.ring
    target = steinberg_locus(ring).hilbert_table(cfg.degree_bound)
    ann_expected = {f"s{i}" for i in ring.links}
    info = H.cyclic.get(0)
    res = {
        "n": n,
        "hecke_d_squared_zero": C.d_squared_zero(R),
        "hecke_linear": C.hecke_linear(R),
        "minimal_ranks": rep["minimal_ranks"],
        "hecke_exact_negative": rep["exact_negative"],
        "lift_tests": [{k: v for k, v in t.items()} for t in rep["lift_tests"]],
        "steinberg_projection": proj,
        "matches_local_resolution": sign_equivalent(G, steinberg_resolution(n)),
        "nonzero_degrees": H.nonzero_degrees(),
        "H0_matches_steinberg_locus": H.table(0) == target,
        "H0_annihilator": sorted(_ann_set(info)),
        "euler_matches": G.euler_table(cfg.degree_bound) == target,
    }
    res["ok"] = (res["hecke_d_squared_zero"] and res["hecke_linear"] and res["hecke_exact_negative"]
                 and proj["ok"] and res["matches_local_resolution"] and res["nonzero_degrees"] == [0]
                 and res["H0_matches_steinberg_locus"] and _ann_set(info) == ann_expected and res["euler_matches"])
    res["expected_annihilator"] = sorted(ann_expected)
    return res


def check_steinberg_image(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    ns = [cfg.n] if cfg.n else [2, 3]
    out = [verify_steinberg_image(cfg, n) for n in ns]
    return _cert("steinberg-image", cfg, {"cases": out},
                 {"H_negative": "0", "H0": "coordinate ring of the Steinberg locus, annihilator s_1..s_{n-1}"},
                 all(o["ok"] for o in out), t0)


# 2 -------------------------------------------------------------------------

def verify_line_bundle(cfg: RunConfig, n: int, Z) -> dict:
    Z = frozenset(Z)
    p = ll_point(n, Z, cfg.lam, cfg.q_sqrt)
    out = r_functor(p, "simple", k=min(cfg.k, 3), degree_bound=cfg.degree_bound)
    lb = line_bundle(n, Z)
    expected_table = lb.module.hilbert_table(cfg.degree_bound)
    deg = -lb.l_y
    wt = WeightVector.zero(n)
    for i in Z:
        wt = wt + WeightVector.alpha(i, n)
    info = out.identified or {}
    ring = out.complex.ring
    ann_expected = {ring.t_name(a) for a in range(ring.nt)} | {f"s{i}" for i in ring.links}
    hecke = ll_z_check(n, Z, cfg.lam, 3, cfg.q_sqrt)
    res = {
        "pattern": sorted(Z),
        "nonzero_degrees": out.homology.nonzero_degrees(),
        "expected_degree": deg,
        "generator_weight": info.get("generator_weight"),
        "expected_weight": list(wt),
        "annihilator": sorted(_ann_set(info)),
        "table_matches_line_bundle": out.homology.table(deg) == expected_table,
        "hecke_exact_negative": out.hecke.get("exact_negative"),
        "hecke_cokernel_is_LL": hecke,
    }
    res["ok"] = (res["nonzero_degrees"] == [deg] and res["table_matches_line_bundle"]
                 and info.get("generator_weight") == list(wt) and _ann_set(info) == ann_expected
                 and hecke["ok"] and bool(res["hecke_exact_negative"]))
    return res


def check_line_bundles(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    n = cfg.n or 3
    links = range(1, n)
    cases = [verify_line_bundle(cfg, n, Z) for r in range(n) for Z in combinations(links, r)]
    trivial = next(c for c in cases if len(c["pattern"]) == n - 1)
    ok = all(c["ok"] for c in cases) and trivial["nonzero_degrees"] == [1 - n]
    cert = _cert("line-bundles", cfg, {"cases": cases},
                 {"concentrated_in": "-|pattern|", "free_rank": 1, "weight": "sum of alpha_i over the pattern",
                  "trivial_parameter_degree": 1 - n}, ok, t0)
    if not ok and n >= 4:
        # beyond n = 3 the quotient-cube route is not known to resolve LL
        cert.verdict = "unverified"
        cert.notes.append("mismatch at n >= 4 is reported as unverified, not as a refutation")
    return cert


# 3 -------------------------------------------------------------------------

def check_flags_jacquet(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    rng = random.Random(cfg.seed)
    nmax = cfg.n or 5
    count = 50
    rows, ok = [], True
    for j in range(count):
        n = 1 + j % nmax
        p = random_point(n, rng, cfg.q_sqrt)
        M = standard_module(p)
        J = sorted(jacquet_characters(M))
        F = sorted(tuple(f.values) for f in stable_flags(p))
        good = J == F and M.dim == len(F)
        ok &= good
        rows.append({"n": n, "dim": M.dim, "flags": len(F), "match": good})
    return _cert("flags-jacquet", cfg, {"points": rows, "count": count},
                 {"jacquet_equals_flags": True}, ok and len(rows) >= 50, t0)


# 4 -------------------------------------------------------------------------

def check_gl2_ext(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    ring = single_chain_ring(2)
    X0 = subscheme_module(ring, vanishing_u={1})  # image of the Iwahori-trivial projective
    Y = subscheme_module(ring, vanishing_u=set())  # image of the Steinberg projective
    objs = {"K": ((1, 1), X0, {1}), "st": ((2,), Y, set())}
    base_t_s = {(d, (0, 0)): d + 1 for d in range(cfg.degree_bound)}  # Q[t, s] in weight 0
    pairs, ok = [], True
    for a, (Pa, Ma, Ia) in objs.items():
        for b, (Pb, Mb, Ib) in objs.items():
            tab = ext_table(Ma, Mb, cfg.i_max, cfg.degree_bound)
            inv = invariants(tab)
            gdeg = len(set(Ia) - set(Ib))
            expected0 = {(d + gdeg, w): v for (d, w), v in base_t_s.items() if d + gdeg < cfg.degree_bound}
            higher_zero = all(not inv.get(i) for i in range(1, cfg.i_max + 1))
            cert = tab.resolution.certificate()
            hecke = idempotent_pairing(2, Pa, Pb, cfg.q_sqrt)
            row = {"pair": [a, b], "ext0_weight0": hilbert_json(inv.get(0, {})),
                   "ext0_rank_one": inv.get(0, {}) == expected0, "generator_degree": gdeg,
                   "higher_invariants_zero": higher_zero, "periodicity": cert,
                   "hecke_rank": hecke["rank"], "hecke_conclusive": hecke["conclusive"]}
            row["ok"] = (row["ext0_rank_one"] and higher_zero and hecke["rank"] == 1 and hecke["conclusive"]
                         and (cert["period"] is not None or cert["finite"]))
            ok &= row["ok"]
            pairs.append(row)
    # composites: both orders give s_1 times the identity, on both sides
    cc = CentralCharacter.chain(cfg.lam, 2, cfg.q_sqrt)
    M = ModuleCache(cc, cfg.k)
    a, b = (1, 2), (2, 1)
    comp = {}
    for x, y in ((a, b), (b, a)):
        F = M.f_hat(y, x).matrix @ M.f_hat(x, y).matrix
        c = identify_multiple(F, M.module(x).identity())
        s_mono = tuple(1 if nm == "s1" else 0 for nm in F.ring.names)
        hecke_ok = c is not None and c.divide_by_monomial(s_mono, ring=c.ring).is_unit()
        g = g_map(ring, y, x).compose(g_map(ring, x, y))
        local_ok = g.entries == ModuleMap(g.src, g.tgt, {(0, 0): poly(ring.s(1))}).entries
        comp["".join(map(str, x))] = {"hecke_is_s1_times_unit": hecke_ok, "local_is_s1": local_ok}
        ok &= hecke_ok and local_ok
    return _cert("gl2-ext", cfg, {"pairs": pairs, "composites": comp},
                 {"ext0": "free of rank 1 over Q[t,s] in weight 0", "ext_higher_weight0": 0,
                  "composite": "s1 * identity"}, ok, t0)


# 5 -------------------------------------------------------------------------

def support_sample(Pp, q_sqrt=2) -> PhiNPoint:
    """Chains of the given lengths on the bases 1, 3, 9, ..."""
    return chain_point([(3 ** j, r) for j, r in enumerate(Pp)], q_sqrt)


def check_supports(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    ns = [cfg.n] if cfg.n else [1, 2, 3]
    rows, ok = [], True
    for n in ns:
        alg = make_hecke(n, cfg.q_sqrt)
        for Pp in partitions(n):
            M = standard_module(support_sample(Pp, cfg.q_sqrt))
            for Pe in partitions(n):
                E = M.act(idempotent(n, Pe, cfg.q_sqrt).hecke(alg))
                nonzero = not E.is_zero()
                expect = partition_leq(Pe, Pp)
                ok &= nonzero == expect
                rows.append({"n": n, "idempotent": list(Pe), "sample": list(Pp), "nonzero": nonzero,
                             "expected": expect})
    return _cert("supports", cfg, {"pairs": rows}, {"nonzero_iff": "P precedes P' in the reverse dominance order"},
                 ok, t0)


# 6 -------------------------------------------------------------------------

_STALK_CASES = {
    "d2": ([(1, 3)], {frozenset({1}): 1, frozenset({2}): 1}),
    "d1": ([(1, 2), (3, 1)], {frozenset(): 1, frozenset({1}): 1}),
    "generic": ([(1, 1), (3, 1), (9, 1)], {frozenset(): 2}),
}


def verify_gl3_stalks(cfg: RunConfig, case: str) -> dict:
    strings, expected = _STALK_CASES[case]
    cc = CentralCharacter.make(strings, cfg.q_sqrt)
    n = cc.n
    alg = make_hecke(n, cc.qspec)
    P0 = (2, 1)
    e0 = idempotent(n, P0, cc.qspec)
    m0 = e0.multiplicity
    mult = {}
    simples = {}
    for r in range(len(cc.links) + 1):
        for I in combinations(cc.links, r):
            I = frozenset(I)
            L = top_cokernel_module(cz_complex(n, I, k=2, cc=cc))
            d = L.act(e0.hecke(alg)).constant_part()
            from ..exact import RatMatrix
            rank = RatMatrix(d).rank() if L.dim else 0
            simples[I] = L.dim
            if rank % m0:
                raise ArithmeticError("block projection rank is not a multiple of m")
            if rank:
                mult[I] = rank // m0
    ring = local_ring(cc.lengths)
    summands = []
    for I, m in sorted(mult.items(), key=lambda kv: sorted(kv[0])):
        single = _cube(cc, 1, "none", lambda S, I=I: label_for(n, I), "term", links=())
        img = dictionary(single).terms[0]
        for _ in range(m):
            summands.append({"I": sorted(I), "annihilator": [ring.mono_str(a) for a in img.summands[0].ann]})
    res = {"case": case, "strings": [[q_str(to_q(h)), r] for h, r in strings], "m_P0": m0,
           "simples": {",".join(map(str, sorted(I))) or "-": d for I, d in sorted(simples.items(), key=lambda kv: sorted(kv[0]))},
           "multiplicities": {",".join(map(str, sorted(I))) or "-": m for I, m in mult.items()},
           "sum_matches_m": sum(mult.values()) == m0, "stalk_summands": summands}
    res["ok"] = mult == expected and res["sum_matches_m"]
    return res


def check_gl3_stalks(cfg: RunConfig, case: str) -> Certificate:
    t0 = time.perf_counter()
    res = verify_gl3_stalks(cfg, case)
    m = [e.multiplicity for e in finite_idempotents(3, cfg.q_sqrt)]
    labels = [list(e.label) for e in finite_idempotents(3, cfg.q_sqrt)]
    pr = idempotent_pairing(3, (2, 1), (2, 1), cfg.q_sqrt)
    res["block_multiplicities"] = {"labels": labels, "m": m}
    res["e_P0_H_e_P0_rank"] = {"rank": pr["rank"], "conclusive": pr["conclusive"], "expected": pr["expected"]}
    m_by = dict(zip(map(tuple, labels), m))
    ok = (res["ok"] and [m_by[(3,)], m_by[(2, 1)], m_by[(1, 1, 1)]] == [1, 2, 1]
          and pr["rank"] == 16 and pr["conclusive"])
    exp = {"d2": "O/(u2) + O/(u1)", "d1": "O + O/(u1)", "generic": "free of rank 2"}[case]
    return _cert(f"gl3-stalks-{case}", cfg, res, {"stalk": exp, "m": [1, 2, 1], "rank": 16}, ok, t0)


# 7 -------------------------------------------------------------------------

def verify_hom_rank(cfg: RunConfig, n: int) -> dict:
    cc = CentralCharacter.chain(cfg.lam, n, cfg.q_sqrt)
    M = ModuleCache(cc, cfg.k)
    W = P.all_perms(n)
    ranks_ok, sylvester, pairs = True, set(), 0
    for w in W:
        for w2 in W:
            hs = hom_space(M.module(w), M.module(w2), sylvester=True, verify=True)
            ranks_ok &= hs.rank == 1 and hs.certificate["route_frobenius"]["commutes"]
            sylvester.add(hs.certificate["route_sylvester"]["closed_point_dim"])
            pairs += 1
    ring = local_ring(cc.lengths)
    triples = bad_hecke = bad_local = 0
    for a in W:
        for b in W:
            for c in W:
                I = [i_set_on_links(v, cc.links) for v in (a, b, c)]
                d = defect_monomial(ring, *I)
                # Hecke side: composite = x * f(a, c) with x a unit times the defect
                F = M.f_hat(b, c).matrix @ M.f_hat(a, b).matrix
                x = identify_multiple(F, M.f_hat(a, c).matrix)
                mono = tuple(d[ring.index[nm]] for nm in F.ring.names)
                good = x is not None and (x.divide_by_monomial(mono, ring=x.ring).is_unit() if any(mono)
                                          else x.is_unit())
                bad_hecke += not good
                # local side: g(b,c) g(a,b) = defect * g(a,c)
                g = g_map(ring, b, c).compose(g_map(ring, a, b))
                h = g_map(ring, a, c)
                want = ModuleMap(h.src, h.tgt, {k: poly_mul(poly(d), p) for k, p in h.entries.items()})
                bad_local += g.entries != want.entries
                triples += 1
    return {"n": n, "pairs": pairs, "rank_one": ranks_ok, "closed_point_dims": sorted(sylvester),
            "triples": triples, "hecke_mismatches": bad_hecke, "local_mismatches": bad_local,
            "ok": ranks_ok and sylvester == {1} and bad_hecke == 0 and bad_local == 0}


def check_hom_rank(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    ns = [cfg.n] if cfg.n else [1, 2, 3]
    out = [verify_hom_rank(cfg, n) for n in ns]
    return _cert("hom-rank", cfg, {"cases": out},
                 {"rank": 1, "triple_scalar": "unit times the defect monomial"}, all(o["ok"] for o in out), t0)


# 8 -------------------------------------------------------------------------

def check_geometry(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    rng = random.Random(cfg.seed)
    ns = [cfg.n] if cfg.n else [1, 2, 3, 4]
    samples = []
    for j in range(max(10, 3 * len(ns))):
        n = ns[j % len(ns)]
        p = random_point(n, rng, cfg.q_sqrt, partial=False)
        samples.append({"n": n, "tangent_dim": tangent_dim(p), "expected": n * n})
    m = max(ns) if max(ns) >= 2 else 2
    crossing = chain_point([(1, m)], cfg.q_sqrt, linked=False)
    td = tangent_dim(crossing)
    ok = all(s["tangent_dim"] == s["expected"] for s in samples) and td > m * m
    return _cert("geometry", cfg, {"generic": samples, "intersection_point": {"n": m, "tangent_dim": td}},
                 {"generic": "n^2", "intersection": "> n^2"}, ok, t0)


def check_borel_audit(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    a = borel_component_audit(3, 3, cfg.q_sqrt)
    ok = (a.dim_B, a.component_dim) == (45, 46) and a.verdict == "not equidimensional"
    return _cert("borel-audit", cfg, a.to_json(), {"dims": [45, 46], "verdict": "not equidimensional"}, ok, t0)


# 9 -------------------------------------------------------------------------

def check_hecke_laws(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    ns = [cfg.n] if cfg.n else [1, 2, 3, 4]
    rows, ok = [], True
    for n in ns:
        alg = make_hecke(n, cfg.q_sqrt)
        rel = relation_suite(alg)
        central = all(is_central(alg, elementary_symmetric(n, j).element(alg)) for j in range(1, n + 1))
        central &= is_central(alg, elementary_symmetric(n, n, -1).element(alg))
        try:
            center_check(n, 2, cfg.q_sqrt)
            center_ok = True
        except AssertionError:
            center_ok = False
        # control: a single theta_j is not central once n >= 2
        control = n == 1 or not is_central(alg, alg.theta_j(1))
        laws = check_laws(n, cfg.q_sqrt) if n <= 4 else {}
        line = sign_line_check(n, cfg.q_sqrt) if n <= 3 else {"free_rank_one": None}
        row = {"n": n, "relations": rel, "symmetric_central": central, "products_central": center_ok,
               "theta_1_not_central": control,
               "idempotent_laws": laws, "sign_line": line}
        row["ok"] = (all(rel.values()) and central and center_ok and control and all(laws.values())
                     and line["free_rank_one"] in (True, None))
        ok &= row["ok"]
        rows.append(row)
    return _cert("hecke-laws", cfg, {"cases": rows}, {"all_laws": True}, ok, t0)


# 10 ------------------------------------------------------------------------

def induction_points(q_sqrt=2) -> list[PhiNPoint]:
    q = as_qspec(q_sqrt).q
    def pt(vals, edges):
        return PhiNPoint.diagonal(vals, edges, q_sqrt)
    return [
        pt([1, 1 / q], []),                              # (1)+(1) on one string
        pt([1, 1 / q, 3], [(2, 1)]),                     # (2)+(1) on two strings
        pt([1, 1 / q, 1 / q ** 2], [(2, 1)]),            # (2)+(1) on one string
        pt([1, 1 / q, 1 / q ** 2], [(3, 2)]),            # (1)+(2) on one string
        pt([1, 1 / q, 1 / q ** 2, 1 / q ** 3], [(2, 1), (4, 3)]),  # (2)+(2)
        pt([1, 1 / q, 1 / q ** 2, 1 / q ** 3], [(2, 1), (3, 2)]),  # (3)+(1)
        pt([1, 1 / q, 3, 3 / q], [(2, 1), (4, 3)]),      # (2)+(2) on two strings
    ]


def verify_induction_compat(cfg: RunConfig, p: PhiNPoint, k: int = 3) -> dict:
    pd = point_data(p)
    # one stage: G-intertwiners on the cube directly
    A = standard_complex(pd.cc, pd.Z, k)
    RA = A.realize()
    HA = homology(dictionary(A), cfg.degree_bound)
    # two stages: Levi intertwiners, induced and identified through the G ones
    B = levi_standard_complex(pd, k)
    RB, scalars = induced_realization(B)
    HB = homology(dictionary(B, scalars), cfg.degree_bound)
    std = standard_module(p)
    jA = jacquet_characters(top_cokernel_module(A, RA))
    jB = jacquet_characters(top_cokernel_module(B, RB))
    jS = jacquet_characters(std)
    FA = minimalize(FreeComplex.from_realized(A, RA))
    res = {
        "point": p.to_json(), "segments": list(pd.blocks), "unjoined_links": sorted(pd.Z),
        "one_stage_terms": {str(d): [list(w) for w in A.labels(d)] for d in A.degrees()},
        "two_stage_terms": {str(d): [list(w) for w in B.labels(d)] for d in B.degrees()},
        "identification_scalars": sorted({q_str(c.constant()) for c in scalars.values()}),
        "d_squared_zero": [A.d_squared_zero(RA), B.d_squared_zero(RB)],
        "tables_identical": HA.to_json() == HB.to_json(),
        "top_cokernel_is_standard": [jA == jS, jB == jS],
        "minimal_ranks": {str(d): r for d, r in sorted(FA.ranks.items())},
        "homology": HA.to_json(),
    }
    res["ok"] = (all(res["d_squared_zero"]) and res["tables_identical"] and all(res["top_cokernel_is_standard"]))
    return res


def check_induction_compat(cfg: RunConfig) -> Certificate:
    t0 = time.perf_counter()
    pts = [p for p in induction_points(cfg.q_sqrt) if cfg.n is None or p.n == cfg.n]
    out = [verify_induction_compat(cfg, p) for p in pts]
    multi = sum(1 for o in out if len(o["segments"]) >= 2)
    ok = all(o["ok"] for o in out) and (multi >= 5 or cfg.n is not None) and bool(out)
    return _cert("induction-compat", cfg, {"points": out, "multi_chain_points": multi},
                 {"tables": "identical for both routes", "points": ">= 5"}, ok, t0)


# registry ------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    claim: str
    anchor: str
    scope: str
    run: Callable[[RunConfig], Certificate]
    applies: Callable[[int | None], bool] = lambda n: True


CHECKS: dict[str, Check] = {}


def _register(*checks: Check) -> None:
    for c in checks:
        CHECKS[c.claim] = c


_register(
    Check("steinberg-image", "Steinberg image: exact cube, H0 = Steinberg locus", "n = 2, 3",
          check_steinberg_image, lambda n: n is None or 1 <= n <= 4),
    Check("line-bundles", "simple modules on a full chain give shifted line bundles", "n = 3, all patterns",
          check_line_bundles, lambda n: n is None or 1 <= n <= 4),
    Check("flags-jacquet", "Jacquet characters of standard modules = stable flags", "50 points, n <= 5",
          check_flags_jacquet, lambda n: n is None or 1 <= n <= 5),
    Check("gl2-ext", "GL2 Ext comparison and composite intertwiners", "n = 2",
          check_gl2_ext, lambda n: n in (None, 2)),
    Check("supports", "supports of the idempotent projectives", "n <= 3",
          check_supports, lambda n: n is None or 1 <= n <= 3),
    Check("gl3-stalks-d1", "GL3 stalk decomposition, character with a (2)+(1) string split", "n = 3",
          lambda cfg: check_gl3_stalks(cfg, "d1"), lambda n: n in (None, 3)),
    Check("gl3-stalks-d2", "GL3 stalk decomposition, fully linked character", "n = 3",
          lambda cfg: check_gl3_stalks(cfg, "d2"), lambda n: n in (None, 3)),
    Check("gl3-stalks-generic", "GL3 stalk at a generic character (control)", "n = 3",
          lambda cfg: check_gl3_stalks(cfg, "generic"), lambda n: n in (None, 3)),
    Check("hom-rank", "intertwiner spaces are free of rank 1; composition defects", "n <= 3",
          check_hom_rank, lambda n: n is None or 1 <= n <= 3),
    Check("geometry", "tangent dimension at generic and crossing points", "n <= 4",
          check_geometry, lambda n: n is None or 1 <= n <= 4),
    Check("borel-audit", "Borel family dimension audit, r = d = 3", "fixed",
          check_borel_audit),
    Check("hecke-laws", "affine Hecke relations, centre and idempotent laws", "n <= 4",
          check_hecke_laws, lambda n: n is None or 1 <= n <= 4),
    Check("induction-compat", "one-stage vs two-stage induction", "7 points, n <= 4",
          check_induction_compat, lambda n: n is None or 2 <= n <= 4),
)


def run_check(claim: str, cfg: RunConfig) -> Certificate:
    c = CHECKS[claim]
    if not c.applies(cfg.n):
        return Certificate(claim, c.anchor, cfg.to_json(), {}, {}, "skipped", 0.0,
                           [f"not defined for n = {cfg.n}"])
    return c.run(cfg)
