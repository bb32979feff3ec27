import json

import pytest

from lparam.certificate import SCHEMA, Certificate, dump_certificates, jsonable, strip_timing
from lparam.exact import to_q


def test_jsonable_rationals_and_sets():
    assert jsonable({1: to_q("3/2"), "s": {2, 1}, "t": (1, 2)}) == {"1": "3/2", "s": [1, 2], "t": [1, 2]}
    with pytest.raises(TypeError):
        jsonable(0.5)


def test_document_shape_and_timing_isolation():
    a = Certificate("b-claim", "anchor b", {}, {"x": to_q(1)}, {}, "pass", 1.25)
    b = Certificate("a-claim", "anchor a", {}, {}, {}, "fail", 0.5, ["note"])
    t1 = dump_certificates([a, b], "2026-01-01T00:00:00+00:00")
    a.runtime, b.runtime = 9.0, 7.0
    t2 = dump_certificates([b, a], "2027-01-01T00:00:00+00:00")
    assert t1 != t2 and strip_timing(t1) == strip_timing(t2)
    doc = json.loads(t1)
    assert doc["schema"] == SCHEMA
    assert [c["claim"] for c in doc["certificates"]] == ["a-claim", "b-claim"]
    assert doc["summary"] == {"pass": 1, "fail": 1, "skipped": 0, "unverified": 0}
    assert "runtime" not in doc["certificates"][0]
    assert doc["timing"]["runtime_s"]["b-claim"] == "1.250"
