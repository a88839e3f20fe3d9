"""Verification records and the aggregate report emitted by every checker."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

PASS = "pass"
FAIL = "fail"
FINDING = "finding"
UNRESOLVED = "unresolved"
STATUSES = (PASS, FAIL, FINDING, UNRESOLVED)

SCHEMA_ID = "pnspace-report/1"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a single exact comparison; falsy when it fails."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class CheckRecord:
    check_id: str
    status: str
    instances: int = 0
    witness: Optional[dict] = None
    values: dict = field(default_factory=dict)
    note: str = ""
    duration: float = 0.0

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        # duration is wall-clock and would break byte-identical reports
        out: dict[str, Any] = {
            "id": self.check_id,
            "status": self.status,
            "instances": self.instances,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.values:
            out["values"] = self.values
        if self.note:
            out["note"] = self.note
        return out


class Tally:
    """Accumulates instance outcomes for one check id, keeping the first witness."""

    def __init__(self, check_id: str, on_violation: str = FAIL) -> None:
        self.check_id = check_id
        self.on_violation = on_violation
        self.instances = 0
        self.violations = 0
        self.witness: Optional[dict] = None
        self.values: dict = {}
        self.note = ""

    def ok(self, count: int = 1) -> None:
        self.instances += count

    def bad(self, witness: dict) -> None:
        self.instances += 1
        self.violations += 1
        if self.witness is None:
            self.witness = witness

    def record(self, duration: float = 0.0) -> CheckRecord:
        status = PASS if self.violations == 0 else self.on_violation
        values = dict(self.values)
        values["violations"] = self.violations
        return CheckRecord(
            self.check_id,
            status,
            instances=self.instances,
            witness=self.witness,
            values=values,
            note=self.note,
            duration=duration,
        )


@contextmanager
def timed(tally: Tally, sink: list) -> Iterator[Tally]:
    start = time.perf_counter()
    yield tally
    sink.append(tally.record(time.perf_counter() - start))


@dataclass
class VerificationReport:
    command: str
    config: dict = field(default_factory=dict)
    records: list = field(default_factory=list)

    def add(self, *records: CheckRecord) -> None:
        self.records.extend(records)

    def extend(self, records) -> None:
        self.records.extend(records)

    @property
    def verdict(self) -> str:
        return FAIL if any(r.failed for r in self.records) else PASS

    def status_of(self, check_id: str) -> str:
        for rec in self.records:
            if rec.check_id == check_id:
                return rec.status
        raise KeyError(check_id)

    def get(self, check_id: str) -> CheckRecord:
        for rec in self.records:
            if rec.check_id == check_id:
                return rec
        raise KeyError(check_id)

    def failures(self) -> list:
        return [r for r in self.records if r.failed]

    def to_dict(self) -> dict:
        ordered = sorted(self.records, key=lambda r: r.check_id)
        return {
            "schema": SCHEMA_ID,
            "command": self.command,
            "config": self.config,
            "records": [r.to_dict() for r in ordered],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"pnspace {self.command}: {self.config.get('name', '<unnamed>')}"]
        for rec in sorted(self.records, key=lambda r: r.check_id):
            line = f"  [{rec.status.upper():>10}] {rec.check_id:<32} {rec.instances:>7} inst  {rec.duration:7.3f}s"
            if rec.note:
                line += f"  ({rec.note})"
            lines.append(line)
            if rec.witness is not None and rec.status != PASS:
                lines.append(f"               witness: {json.dumps(rec.witness, sort_keys=True)}")
        lines.append(f"verdict: {self.verdict.upper()}")
        return "\n".join(lines) + "\n"
