"""Verification reports shared by all sweep-style checks.

A report is deterministic data: fixed check name, stringified parameters,
pass/fail status, the number of identity instances examined, and (on failure
only) the first counterexample in the sweep's canonical order.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass

PASS = "pass"
FAIL = "fail"
INPUT_ERROR = "input_error"


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    parameters: dict
    status: str
    checked_count: int
    counterexample: dict | None = None

    def passed(self) -> bool:
        return self.status == PASS

    def to_json_dict(self) -> dict:
        record = {
            "check_name": self.check_name,
            "parameters": {key: str(value) for key, value in self.parameters.items()},
            "status": self.status,
            "checked_count": self.checked_count,
        }
        if self.counterexample is not None:
            record["counterexample"] = self.counterexample
        return record

    def to_text(self) -> str:
        tokens = [self.status.upper(), self.check_name]
        for key, value in sorted(self.parameters.items()):
            tokens.append(f"{key}={shlex.quote(str(value))}")
        tokens.append(f"checked_count={self.checked_count}")
        if self.counterexample is not None:
            for key, value in _flatten(self.counterexample):
                tokens.append(f"counterexample.{key}={shlex.quote(str(value))}")
        return " ".join(tokens)


def _flatten(record: dict, prefix: str = ""):
    for key in sorted(record):
        value = record[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, f"{name}.")
        else:
            yield name, value


def passing(check_name: str, parameters: dict, checked_count: int) -> VerificationReport:
    return VerificationReport(check_name, parameters, PASS, checked_count)


def failing(check_name: str, parameters: dict, checked_count: int,
            counterexample: dict) -> VerificationReport:
    return VerificationReport(check_name, parameters, FAIL, checked_count, counterexample)


def counterexample(indices: dict, expected: str, actual: str,
                   input_text: str | None = None, **extra) -> dict:
    """Counterexample record with every value in exact text form."""
    record = {
        "indices": {key: str(value) for key, value in indices.items()},
        "expected": expected,
        "actual": actual,
    }
    if input_text is not None:
        record["input"] = input_text
    record.update(extra)
    return record
