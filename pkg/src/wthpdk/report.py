from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import CRational

REPORT_FIELDS = ("check_name", "params", "status", "max_residual", "witness", "elapsed_ms")


def jsonable(value: Any) -> Any:
    """Render exact scalars and tuples in a stable JSON-friendly way."""
    if isinstance(value, (Fraction, CRational)) or type(value).__name__ == "mpq":
        return str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    return value


@dataclass
class VerificationReport:
    check_name: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    max_residual: float = 0.0
    witness: Any = None
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "params": jsonable(self.params),
            "status": self.status,
            "max_residual": float(self.max_residual),
            "witness": jsonable(self.witness),
            "elapsed_ms": round(float(self.elapsed_ms), 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)
