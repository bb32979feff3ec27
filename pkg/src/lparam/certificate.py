"""Verification certificates and their deterministic JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "lparam-certificates/1"


def jsonable(x: Any) -> Any:
    """Rationals as "p/q" strings, tuples as lists, dict keys as strings."""
    from .exact import q_str

    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in certificates")
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=json.dumps) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    if type(x).__name__ == "mpq":
        return q_str(x)
    return str(x)


@dataclass
class Certificate:
    claim: str
    anchor: str
    config: dict
    computed: dict
    expected: dict
    verdict: str  # "pass" | "fail" | "skipped" | "unverified"
    runtime: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        """Everything except the runtime, which lives in the timing block."""
        return jsonable({"claim": self.claim, "anchor": self.anchor, "config": self.config,
                         "verdict": self.verdict, "computed": self.computed, "expected": self.expected,
                         "notes": self.notes})


def dump_certificates(certs: list[Certificate], timestamp: str | None = None) -> str:
    """Deterministic document; only the ``timing`` block varies between runs."""
    doc = {
        "schema": SCHEMA,
        "certificates": [c.to_json() for c in sorted(certs, key=lambda c: c.claim)],
        "summary": {"pass": sum(c.verdict == "pass" for c in certs),
                    "fail": sum(c.verdict == "fail" for c in certs),
                    "skipped": sum(c.verdict == "skipped" for c in certs),
                    "unverified": sum(c.verdict == "unverified" for c in certs)},
        "timing": {"timestamp": timestamp,
                   "runtime_s": {c.claim: f"{c.runtime:.3f}" for c in sorted(certs, key=lambda c: c.claim)}},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def strip_timing(text: str) -> dict:
    doc = json.loads(text)
    doc.pop("timing", None)
    return doc
