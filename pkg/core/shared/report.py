"""Command reports: one JSON object per CLI invocation, written to stdout."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def inputs_digest(argv: List[str], seed: Optional[int]) -> str:
    """sha256 over the canonical JSON of argv and seed."""
    payload = json.dumps({"argv": list(argv), "seed": seed}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class Report:
    """Result of one command."""
    command: List[str]
    inputs_digest: str
    outputs: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    passed: bool = True
    wall_time_ms: float = 0.0
    error: Optional[str] = None

    def check(self, name: str, ok: bool) -> bool:
        self.checks[name] = bool(ok)
        self.passed = self.passed and bool(ok)
        return bool(ok)

    def to_dict(self) -> Dict[str, Any]:
        data = _jsonable(asdict(self))
        if data["error"] is None:
            del data["error"]
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class Stopwatch:
    """Context manager recording elapsed wall time in milliseconds."""

    def __enter__(self):
        self._start = time.perf_counter()
        self.elapsed_ms = 0.0
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = round((time.perf_counter() - self._start) * 1000, 2)
        return False
