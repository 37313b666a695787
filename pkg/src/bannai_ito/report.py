"""Verification report: an ordered list of named pass/fail checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional


@dataclass
class CheckResult:
    relation: str
    degree: Optional[int]
    status: bool
    residual: Any = None  # printable lhs-minus-rhs, only kept on failure
    family: str = ""

    def to_dict(self) -> dict:
        d = {"relation": self.relation, "degree": self.degree, "status": "pass" if self.status else "fail"}
        if self.family:
            d["family"] = self.family
        if not self.status and self.residual is not None:
            d["lhs_minus_rhs"] = self.residual
        return d


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, relation: str, degree, ok: bool, residual=None, family: str = "") -> bool:
        if not ok and residual is not None and hasattr(residual, "to_json"):
            residual = residual.to_json()
        elif not ok and residual is not None and not isinstance(residual, (str, int, float, list, dict)):
            residual = str(residual)
        self.checks.append(CheckResult(relation, degree, bool(ok), residual if not ok else None, family))
        return bool(ok)

    def extend(self, other: "VerificationReport", family: str = "") -> None:
        for c in other.checks:
            if family and not c.family:
                c.family = family
            self.checks.append(c)

    @property
    def ok(self) -> bool:
        return all(c.status for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.status]

    def families(self) -> List[str]:
        seen = []
        for c in self.checks:
            if c.family and c.family not in seen:
                seen.append(c.family)
        return seen

    def relations(self) -> Iterable[str]:
        return sorted({c.relation for c in self.checks})

    def to_dict(self) -> list:
        return [c.to_dict() for c in self.checks]

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def __len__(self):
        return len(self.checks)
