"""Verification reports: pass/fail/inconclusive records with exit codes."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
NA = "n/a"
STATUSES = (PASS, FAIL, INCONCLUSIVE, NA)


@dataclass
class Check:
    name: str
    status: str
    details: str = ""
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class VerificationReport:
    command: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, status: str, details: str = "", elapsed_ms: float = 0.0) -> Check:
        c = Check(name, status, details, round(elapsed_ms, 3))
        self.checks.append(c)
        return c

    def add_bool(self, name: str, ok: bool, details: str = "", elapsed_ms: float = 0.0) -> Check:
        return self.add(name, PASS if ok else FAIL, details, elapsed_ms)

    @contextmanager
    def timed(self):
        """Yields a one-element list; the elapsed milliseconds land in it."""
        box = [0.0]
        t0 = time.perf_counter()
        try:
            yield box
        finally:
            box[0] = (time.perf_counter() - t0) * 1000

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.details, c.elapsed_ms))
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)

    @property
    def summary(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s[FAIL]:
            return 1
        if s[INCONCLUSIVE]:
            return 2
        return 0

    @property
    def ok(self) -> bool:
        return self.exit_code == 0

    def failures(self) -> list:
        return [c for c in self.checks if c.status in (FAIL, INCONCLUSIVE)]

    def strip_timings(self) -> "VerificationReport":
        for c in self.checks:
            c.elapsed_ms = 0.0
        return self

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "checks": [asdict(c) for c in self.checks],
            "notes": list(self.notes),
            "summary": self.summary,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        r = cls(d["command"], dict(d.get("params", {})), [], list(d.get("notes", [])))
        for c in d.get("checks", []):
            r.checks.append(Check(c["name"], c["status"], c.get("details", ""), c.get("elapsed_ms", 0.0)))
        return r

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_text(self, timings: bool = True) -> str:
        lines = [f"# {self.command} " + " ".join(f"{k}={v}" for k, v in self.params.items())]
        for c in self.checks:
            t = f" ({c.elapsed_ms:.1f} ms)" if timings and c.elapsed_ms else ""
            d = f"  {c.details}" if c.details else ""
            lines.append(f"[{c.status.upper():>12}] {c.name}{t}{d}")
        for n in self.notes:
            lines.append(f"note: {n}")
        s = self.summary
        lines.append(
            f"summary: {s[PASS]} pass, {s[FAIL]} fail, {s[INCONCLUSIVE]} inconclusive, {s[NA]} n/a"
        )
        return "\n".join(lines)
