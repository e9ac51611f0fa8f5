"""Report records and canonical JSON serialization.

Reports must be byte-reproducible across runs with the same seed, so the
serializer sorts keys, renders fractions as "num/den" strings, and rounds
floats to 12 significant digits before emitting them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1


def canonical(obj):
    """Recursively convert a report object into JSON-stable primitives."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return repr(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, bool) or isinstance(obj, int) or obj is None:
        return obj
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [canonical(v) for v in items]
    if hasattr(obj, "to_json"):
        return canonical(obj.to_json())
    if hasattr(obj, "elements"):
        return canonical(list(obj.elements))
    return repr(obj)


def stable_dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ":"))


@dataclass
class ClaimRecord:
    """One evaluated claim on one instance."""

    claim: str
    klass: str  # "hard" or "fitted"
    instance: dict
    measured: dict = field(default_factory=dict)
    fitted_constant: float | None = None
    violated: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "class": self.klass,
            "instance": canonical(self.instance),
            "measured": canonical(self.measured),
            "fitted_constant": canonical(self.fitted_constant),
            "violated": self.violated,
            "note": self.note,
        }


@dataclass
class ExperimentReport:
    """A named experiment with parameters, measurements, and sub-records."""

    name: str
    instance: dict
    params: dict = field(default_factory=dict)
    measured: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def violated(self) -> bool:
        return bool(self.violations)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instance": canonical(self.instance),
            "params": canonical(self.params),
            "measured": canonical(self.measured),
            "records": [canonical(r) for r in self.records],
            "violations": canonical(self.violations),
        }
