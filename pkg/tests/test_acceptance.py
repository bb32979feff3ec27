"""The ten acceptance criteria, each run with its stated parameters and time
budget.  One PASS/FAIL line per criterion is printed to the terminal.

    python3 -m pytest tests/test_acceptance.py -v
    python3 tests/test_acceptance.py
"""

import sys
import time

import pytest

from lparam.functor.verify import RunConfig, run_check

# q = 4, lambda = 1, k = 4, degree bound 6, Ext up to index 6
CFG = RunConfig(n=None, q_sqrt=2, lam=1, k=4, degree_bound=6, i_max=6, seed=0)


def _c1(certs):
    (c,) = certs
    cases = {o["n"]: o for o in c.computed["cases"]}
    assert sorted(cases) == [2, 3]
    for n, o in cases.items():
        assert o["hecke_exact_negative"] and o["nonzero_degrees"] == [0]
        assert o["H0_matches_steinberg_locus"] and o["H0_annihilator"] == [f"s{i}" for i in range(1, n)]


def _c2(certs):
    (c,) = certs
    cases = c.computed["cases"]
    assert len(cases) == 4
    for o in cases:
        assert o["nonzero_degrees"] == [-len(o["pattern"])] and o["generator_weight"] == o["expected_weight"]
    assert [o["nonzero_degrees"] for o in cases if o["pattern"] == [1, 2]] == [[-2]]


def _c3(certs):
    (c,) = certs
    pts = c.computed["points"]
    assert len(pts) >= 50 and max(p["n"] for p in pts) <= 5 and all(p["match"] for p in pts)


def _c4(certs):
    (c,) = certs
    pairs = c.computed["pairs"]
    assert len(pairs) == 4
    for p in pairs:
        assert p["ext0_rank_one"] and p["higher_invariants_zero"]
        per = p["periodicity"]
        assert per["finite"] or per["period"] == 2
    assert any(p["periodicity"]["period"] == 2 for p in pairs)
    assert all(v["hecke_is_s1_times_unit"] and v["local_is_s1"] for v in c.computed["composites"].values())


def _c5(certs):
    (c,) = certs
    rows = c.computed["pairs"]
    assert {r["n"] for r in rows} == {1, 2, 3}
    assert all(r["nonzero"] == r["expected"] for r in rows)


def _c6(certs):
    by = {c.claim: c for c in certs}
    for case, ann in (("d1", [[], ["u1"]]), ("d2", [["u1"], ["u2"]])):
        comp = by[f"gl3-stalks-{case}"].computed
        got = sorted(sorted(s["annihilator"]) for s in comp["stalk_summands"])
        assert got == ann
        assert comp["block_multiplicities"]["m"] == [1, 2, 1]
        assert comp["e_P0_H_e_P0_rank"]["rank"] == 16 and comp["e_P0_H_e_P0_rank"]["conclusive"]


def _c7(certs):
    (c,) = certs
    cases = {o["n"]: o for o in c.computed["cases"]}
    assert sorted(cases) == [1, 2, 3] and c.config["k"] == 4
    for n, o in cases.items():
        assert o["rank_one"] and o["closed_point_dims"] == [1]
        assert o["hecke_mismatches"] == 0 and o["local_mismatches"] == 0


def _c8(certs):
    by = {c.claim: c for c in certs}
    g = by["geometry"].computed
    assert len(g["generic"]) >= 10 and all(s["tangent_dim"] == s["n"] ** 2 for s in g["generic"])
    ip = g["intersection_point"]
    assert ip["tangent_dim"] > ip["n"] ** 2
    a = by["borel-audit"].computed
    assert (a["dim_B"], a["component_dim"]) == (45, 46) and a["verdict"] == "not equidimensional"


def _c9(certs):
    (c,) = certs
    for row in c.computed["cases"]:
        assert all(row["relations"][k] for k in ("quadratic", "braid", "cross"))
        assert row["symmetric_central"] and row["products_central"]
        laws = row["idempotent_laws"]
        assert laws["square"] and laws["T_s e_st = -e_st"] and laws["T_s e_K = q e_K"]
        assert row["sign_line"]["free_rank_one"] in (True, None)
    assert any(r["sign_line"]["free_rank_one"] is True for r in c.computed["cases"])


def _c10(certs):
    (c,) = certs
    pts = c.computed["points"]
    multi = [o for o in pts if len(o["segments"]) >= 2]
    assert len(multi) >= 5 and all(o["tables_identical"] for o in pts)
    assert max(o["point"]["n"] for o in pts) <= 4


CRITERIA = [
    (1, "Steinberg image", ["steinberg-image"], 5, _c1),
    (2, "line-bundle shift", ["line-bundles"], 10, _c2),
    (3, "flag/Jacquet equivalence", ["flags-jacquet"], 60, _c3),
    (4, "GL2 Ext suite", ["gl2-ext"], 5, _c4),
    (5, "supports of projectives", ["supports"], 10, _c5),
    (6, "GL3 stalk decompositions", ["gl3-stalks-d1", "gl3-stalks-d2", "gl3-stalks-generic"], 30, _c6),
    (7, "hom rank-1 freeness", ["hom-rank"], 60, _c7),
    (8, "geometry audits", ["geometry", "borel-audit"], 10, _c8),
    (9, "Hecke algebra laws", ["hecke-laws"], 5, _c9),
    (10, "induction compatibility", ["induction-compat"], 120, _c10),
]


def evaluate(num, title, claims, budget, detail):
    t0 = time.perf_counter()
    certs = [run_check(c, CFG) for c in claims]
    elapsed = time.perf_counter() - t0
    problems = [f"{c.claim}: verdict {c.verdict}" for c in certs if c.verdict != "pass"]
    if elapsed >= budget:
        problems.append(f"took {elapsed:.1f}s, budget {budget}s")
    if not problems:
        try:
            detail(certs)
        except AssertionError as exc:
            problems.append(f"detail check failed: {exc}")
    verdict = "PASS" if not problems else "FAIL"
    line = f"{verdict} criterion {num:2d} {title:28s} {elapsed:6.2f}s / {budget}s"
    if problems:
        line += "  (" + "; ".join(problems) + ")"
    return verdict, line


@pytest.mark.parametrize("num,title,claims,budget,detail", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(num, title, claims, budget, detail, capsys):
    verdict, line = evaluate(num, title, claims, budget, detail)
    with capsys.disabled():
        print("\n" + line)
    assert verdict == "PASS", line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(v == "PASS" for v, _ in results) else 1)
