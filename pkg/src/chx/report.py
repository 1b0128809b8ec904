"""Check records and report documents.

Every verifier yields ``Check`` records. A check's evidence is an arbitrary
JSON-able dict; the report stores it in full plus a sha256 digest so two
runs can be compared without diffing the payload.
"""
from __future__ import annotations

import hashlib
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Callable, Iterable

from . import __version__

OK, FAILED, UNDECIDED = "ok", "failed", "undecided"
SCHEMA_VERSION = "chx-report/1"


class Undecided(Exception):
    """Raised by a certifier that ran out of budget without a verdict."""

    def __init__(self, msg, evidence=None):
        super().__init__(msg)
        self.evidence = evidence or {}


@lru_cache(maxsize=1)
def anchors() -> dict:
    txt = resources.files("chx.data").joinpath("anchors.json").read_text()
    return json.loads(txt)


def jsonable(x):
    """Recursive conversion of exact scalars, intervals and dataclasses."""
    from .numeric.scalars import QuadExt, GaussianRational, to_json
    from .numeric.interval import Interval, CInterval
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (QuadExt, GaussianRational)):
        return str(x)
    if isinstance(x, Interval):
        return [repr(x.lo), repr(x.hi)]
    if isinstance(x, CInterval):
        return {"re": jsonable(x.re), "im": jsonable(x.im)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    if hasattr(x, "__dataclass_fields__"):
        return {k: jsonable(getattr(x, k)) for k in x.__dataclass_fields__}
    if hasattr(x, "a") and hasattr(x, "b"):  # mpmath ivmpf
        return [repr(float(x.a)), repr(float(x.b))]
    return str(x)


def digest(obj) -> str:
    s = json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(s.encode()).hexdigest()[:16]


@dataclass
class Check:
    id: str
    claim: str
    status: str
    evidence: dict = field(default_factory=dict)
    wall: float = 0.0

    @property
    def anchor(self) -> str:
        a = anchors()
        key = self.id
        while key:
            if key in a:
                return a[key]
            key = key.rpartition(".")[0]
        return ""

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_dict(self, with_time=True) -> dict:
        ev = jsonable(self.evidence)
        d = {
            "id": self.id,
            "claim": self.claim,
            "anchor": self.anchor,
            "status": self.status,
            "digest": digest(ev),
            "evidence": ev,
        }
        if with_time:
            d["wall_s"] = round(self.wall, 4)
        return d


def run_check(cid: str, claim: str, fn: Callable[[], Any]) -> Check:
    """Evaluate fn; truthy -> ok, falsy -> failed, Undecided -> undecided.

    fn may return (bool, evidence) or a bool.
    Unexpected exceptions count as failures with the message as witness.
    """
    t0 = time.perf_counter()
    try:
        out = fn()
        if isinstance(out, tuple) and len(out) == 2 and isinstance(out[1], dict):
            good, ev = out
        else:
            good, ev = out, {}
        status = OK if good else FAILED
    except Undecided as e:
        status, ev = UNDECIDED, {"reason": str(e), **e.evidence}
    except Exception as e:  # noqa: BLE001 - reported as witness
        status, ev = FAILED, {"error": f"{type(e).__name__}: {e}"}
    return Check(cid, claim, status, ev, time.perf_counter() - t0)


def overall(checks: Iterable[Check]) -> str:
    st = [c.status for c in checks]
    if FAILED in st:
        return FAILED
    if UNDECIDED in st:
        return UNDECIDED
    return OK


def exit_code(status: str) -> int:
    return {OK: 0, FAILED: 1, UNDECIDED: 2}[status]


@dataclass
class ReportDocument:
    suite: str
    checks: list
    config: dict
    timestamp: float = field(default_factory=time.time)

    @property
    def status(self) -> str:
        return overall(self.checks)

    def to_dict(self, timings=False, timestamp=True) -> dict:
        """Wall times are opt-in so that two runs differ only in the timestamp."""
        d = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "version": __version__,
            "status": self.status,
            "config": self.config,
            "counts": {s: sum(c.status == s for c in self.checks) for s in (OK, FAILED, UNDECIDED)},
            "checks": [c.to_dict(timings) for c in sorted(self.checks, key=lambda c: c.id)],
        }
        if timestamp:
            d["timestamp"] = self.timestamp
        return d

    def to_json(self, timings=False, timestamp=True) -> str:
        return json.dumps(self.to_dict(timings, timestamp), indent=2) + "\n"

    def to_text(self, timings=False) -> str:
        lines = [f"suite {self.suite}  status {self.status}  (chx {__version__})"]
        for c in sorted(self.checks, key=lambda c: c.id):
            line = f"[{c.status:9s}] {c.id:40s} {c.anchor:28s} {c.claim}"
            if timings:
                line += f"  ({c.wall:.2f}s)"
            lines.append(line)
            if c.status != OK:
                lines.append("            witness: " + json.dumps(jsonable(c.evidence), sort_keys=True)[:400])
        return "\n".join(lines) + "\n"


def emit_report(doc: ReportDocument, fmt: str, path=None, timings=False) -> str:
    s = doc.to_json(timings) if fmt == "json" else doc.to_text(timings)
    if path:
        with open(path, "w") as fh:
            fh.write(s)
    return s
