from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def jsonable(x):
    """Ints stay ints, Fractions become ``"p/q"``, containers recurse."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


@dataclass
class Report:
    """Outcome of one finite check: ``{check, params, depth, pass, first_failure, witnesses}``."""

    check: str
    params: dict
    depth: int
    passed: bool
    first_failure: int | None = None
    witnesses: list = field(default_factory=list)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "params": jsonable(self.params),
            "depth": self.depth,
            "pass": self.passed,
            "first_failure": self.first_failure,
            "witnesses": jsonable(self.witnesses),
        }
        if self.detail:
            out["detail"] = self.detail
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        where = "" if self.first_failure is None else f" first failure at {self.first_failure}"
        return f"{status} {self.check} {jsonable(self.params)} depth={self.depth}{where}{extra}"
