import json
from typing import Any, Dict, Tuple

from pydantic import BaseModel, ConfigDict

_ENVELOPE_KEYS = ("success", "checks", "citations")


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool


class Report(BaseModel):
    """The outcome of one command: passes iff every check passed"""

    model_config = ConfigDict(frozen=True)

    command: str
    inputs: Dict[str, Any] = {}
    results: Dict[str, Any] = {}
    checks: Tuple[CheckResult, ...] = ()
    citations: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @classmethod
    def from_payload(cls, command: str, inputs: Dict[str, Any], payload: Dict[str, Any]) -> "Report":
        """Split a tool payload into results, checks and citations"""
        return cls(
            command=command,
            inputs=inputs,
            results={k: v for k, v in payload.items() if k not in _ENVELOPE_KEYS},
            checks=tuple(CheckResult(**check) for check in payload.get("checks", [])),
            citations=tuple(payload.get("citations", [])),
        )

    @classmethod
    def merge(cls, command: str, inputs: Dict[str, Any], parts: Dict[str, "Report"]) -> "Report":
        checks, cited = [], []
        for label, part in parts.items():
            checks += [CheckResult(name=f"{label}: {c.name}", passed=c.passed) for c in part.checks]
            cited += [c for c in part.citations if c not in cited]
        return cls(
            command=command,
            inputs=inputs,
            results={label: part.results for label, part in parts.items()},
            checks=tuple(checks),
            citations=tuple(cited),
        )

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [check.model_dump() for check in self.checks],
            "pass": self.passed,
            "citations": list(self.citations),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, default=str)
