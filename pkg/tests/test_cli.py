import json
import os
import subprocess
import sys

import pytest

from lparam import cli
from lparam.certificate import Certificate, strip_timing
from lparam.functor import verify


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def test_list_checks(capsys):
    code, out = run(["list-checks"], capsys)
    rows = out.out.strip().splitlines()
    assert code == 0 and len(rows) == len(verify.CHECKS)
    assert rows[0].startswith("borel-audit → ")
    code, out = run(["list-checks", "gl3"], capsys)
    assert len(out.out.strip().splitlines()) == 3
    assert cli.list_checks("no-such-thing") == []


@pytest.mark.parametrize("argv", [["run", "-n", "0"], ["run", "--q-sqrt", "1"], ["run", "--q-sqrt", "x"],
                                  ["run", "--check", "nope"], ["run", "--lambda", "0"], ["run", "--jobs", "0"],
                                  ["frobnicate"], []])
def test_usage_errors(argv, capsys, tmp_path):
    code, _ = run(argv + (["--out", str(tmp_path / "c.json")] if argv[:1] == ["run"] else []), capsys)
    assert code == 2
    assert not (tmp_path / "c.json").exists()


def test_bad_jobs_env(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv("LPARAM_JOBS", "many")
    code, _ = run(["run", "--check", "borel-audit", "--out", str(tmp_path / "c.json")], capsys)
    assert code == 2


def test_pass_and_stdout(capsys):
    code, out = run(["run", "--check", "borel-audit", "--out", "-"], capsys)
    doc = json.loads(out.out)
    assert code == 0 and doc["summary"]["pass"] == 1
    assert "PASS" in out.err


def test_skipped_scope(capsys, tmp_path):
    p = tmp_path / "c.json"
    code, out = run(["run", "--check", "gl2-ext,gl3-stalks-d1", "-n", "3", "--out", str(p)], capsys)
    doc = json.loads(p.read_text())
    verdicts = {c["claim"]: c["verdict"] for c in doc["certificates"]}
    assert code == 0 and verdicts["gl2-ext"] == "skipped" and verdicts["gl3-stalks-d1"] == "pass"


def _failing(cfg):
    return Certificate("borel-audit", "x", cfg.to_json(), {}, {}, "fail", 0.0)


def _raising(cfg):
    raise ArithmeticError("boom")


@pytest.mark.parametrize("fn", [_failing, _raising])
def test_mismatch_exit_code(fn, monkeypatch, capsys, tmp_path):
    c = verify.CHECKS["borel-audit"]
    monkeypatch.setitem(verify.CHECKS, "borel-audit", verify.Check(c.claim, c.anchor, c.scope, fn))
    p = tmp_path / "c.json"
    code, _ = run(["run", "--check", "borel-audit", "--out", str(p), "--quiet"], capsys)
    doc = json.loads(p.read_text())
    assert code == 3 and doc["certificates"][0]["verdict"] == "fail"
    if fn is _raising:
        assert "boom" in doc["certificates"][0]["notes"][0]


def test_claim_parsing():
    assert cli._claims(None) == sorted(verify.CHECKS)
    assert cli._claims(["hom-rank,geometry", "geometry"]) == ["geometry", "hom-rank"]
    assert cli._claims(["all"]) == sorted(verify.CHECKS)


def _cli(args, env_extra=None):
    env = dict(os.environ, **(env_extra or {}))
    return subprocess.run([sys.executable, "-m", "lparam.cli", *args], env=env, capture_output=True, text=True)


def test_deterministic_and_parallel_equal(tmp_path):
    claims = "borel-audit,supports,hecke-laws"
    outs = []
    for i, extra in enumerate([None, None, {"LPARAM_JOBS": "3"}]):
        p = tmp_path / f"c{i}.json"
        r = _cli(["run", "--check", claims, "-n", "2", "--out", str(p), "--quiet"], extra)
        assert r.returncode == 0, r.stderr
        outs.append(strip_timing(p.read_text()))
    assert outs[0] == outs[1] == outs[2]


def test_unverified_at_large_n(monkeypatch):
    monkeypatch.setattr(verify, "verify_line_bundle", lambda cfg, n, Z: {"pattern": sorted(Z), "ok": False,
                                                                         "nonzero_degrees": []})
    cert = verify.check_line_bundles(verify.RunConfig(n=4))
    assert cert.verdict == "unverified"
    assert verify.check_line_bundles(verify.RunConfig(n=3)).verdict == "fail"
