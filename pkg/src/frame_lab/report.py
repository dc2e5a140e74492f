"""Machine-readable run reports for the CLI.

Serialized as JSON with lexicographically sorted keys. Every field except
duration_ms is a pure function of the flags and the package version.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


def _jsonable(value):
    """Convert numpy scalars and containers to plain JSON-ready values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class RunReport:
    command: str
    params: dict
    metrics: dict
    passed: bool
    tolerances: dict
    duration_ms: int
    version: str
    schema_version: str = field(default="1")

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": _jsonable(self.params),
            "metrics": _jsonable(self.metrics),
            "pass": bool(self.passed),
            "tolerances": _jsonable(self.tolerances),
            "duration_ms": int(self.duration_ms),
            "version": self.version,
            "schema_version": self.schema_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(
            command=data["command"],
            params=data["params"],
            metrics=data["metrics"],
            passed=data["pass"],
            tolerances=data["tolerances"],
            duration_ms=data["duration_ms"],
            version=data["version"],
            schema_version=data.get("schema_version", "1"),
        )
