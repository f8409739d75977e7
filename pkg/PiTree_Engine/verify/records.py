"""
Check records and the verification report.

A record is one check id of one suite with its status over every instance
the suite produced.  Failing records carry a witness: the first failing
instance in the input JSON schemas, replayable with ``replay``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from PiTree_Engine.reports.converters import records_frame, report_to_markdown

PARTITION_SCHEME = "cantor-pairing"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDABLE = "undecidable-at-depth"


@dataclass
class CheckRecord:
    id: str
    suite: str
    status: Status
    instances: int = 0
    parameters: dict = field(default_factory=dict)
    witness: dict | None = None
    witness_file: str | None = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "suite": self.suite,
            "status": self.status.value,
            "instances": self.instances,
            "parameters": dict(self.parameters),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.witness_file:
            out["witness_file"] = self.witness_file
        return out


@dataclass
class VerificationReport:
    command: str
    parameters: dict = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status is Status.FAIL]

    @property
    def undecided(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status is Status.UNDECIDABLE]

    @property
    def exit_code(self) -> int:
        """0 all pass, 1 any failure, 2 undecidable-at-depth only."""
        if self.failed:
            return 1
        if self.undecided:
            return 2
        return 0

    def sorted_records(self) -> list[CheckRecord]:
        return sorted(self.records, key=lambda r: (r.suite, r.id))

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(self.parameters),
            "scheme": PARTITION_SCHEME,
            "records": [r.to_dict() for r in self.sorted_records()],
            "notes": list(self.notes),
            "exit_code": self.exit_code,
        }

    def to_markdown(self, title: str) -> str:
        return report_to_markdown(title, self.to_dict())

    def to_frame(self):
        return records_frame(self.to_dict()["records"])
