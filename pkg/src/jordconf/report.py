"""Deterministic pass/fail reports shared by every verification suite.

A report is a flat list of check records.  Each record carries the identity
it certifies (``anchor``, rendered so a failure points at the formula being
checked), the status, and the residual when nonzero.  Identical invocations
produce byte-identical text and JSON; wall-clock timings are kept out of the
default renderings and only appear when explicitly requested.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA = "jordconf.report/1"

_MAX_RESIDUAL_CHARS = 400


@dataclass
class CheckRecord:
    name: str
    anchor: str
    passed: bool
    residual: str | None = None
    seconds: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    config: dict
    records: list = field(default_factory=list)
    _stamp: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def _elapsed(self):
        # Per-check wall time: suites compute one residual between records,
        # so the gap since the previous record covers the computation.
        now = time.perf_counter()
        elapsed = now - self._stamp
        self._stamp = now
        return elapsed

    def check(self, name, anchor, residual):
        """Record a check; ``residual`` is an element (zero means pass) or bool."""
        if isinstance(residual, bool):
            ok, text = residual, None
        else:
            ok = residual.is_zero()
            text = None if ok else _clip(str(residual))
        self.records.append(CheckRecord(name, anchor, ok, text, self._elapsed()))
        return ok

    def check_equal(self, name, anchor, got, expected):
        ok = got == expected
        text = None if ok else _clip(f"got {got}; expected {expected}")
        self.records.append(CheckRecord(name, anchor, ok, text, self._elapsed()))
        return ok

    def note(self, name, anchor, passed, detail=None):
        self.records.append(CheckRecord(name, anchor, bool(passed),
                                        None if passed else _clip(detail or "failed"),
                                        self._elapsed()))

    def extend(self, other, prefix=""):
        for r in other.records:
            self.records.append(CheckRecord(prefix + r.name, r.anchor, r.passed,
                                            r.residual, r.seconds))
        self._stamp = time.perf_counter()

    # -- rendering -----------------------------------------------------------

    def to_dict(self, timings=False):
        data = {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "checks": [
                {
                    "name": r.name,
                    "anchor": r.anchor,
                    "status": "pass" if r.passed else "fail",
                    **({"residual": r.residual} if r.residual is not None else {}),
                    **({"seconds": round(r.seconds, 6)} if timings else {}),
                }
                for r in self.records
            ],
        }
        if timings:
            data["total_seconds"] = round(sum(r.seconds for r in self.records), 6)
        return data

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), indent=2)

    def to_text(self, timings=False):
        lines = []
        cfg = " ".join(f"{k}={v}" for k, v in self.config.items())
        lines.append(f"suite {self.suite} [{cfg}]")
        for r in self.records:
            status = "pass" if r.passed else "FAIL"
            stamp = f"  ({r.seconds:.3f}s)" if timings else ""
            lines.append(f"  {status}  {r.name}: {r.anchor}{stamp}")
            if r.residual:
                lines.append(f"        residual: {r.residual}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"suite {self.suite}: {verdict} "
                     f"({sum(r.passed for r in self.records)}/{len(self.records)} checks)")
        return "\n".join(lines)


def _clip(text):
    if len(text) > _MAX_RESIDUAL_CHARS:
        return text[:_MAX_RESIDUAL_CHARS] + " ..."
    return text
