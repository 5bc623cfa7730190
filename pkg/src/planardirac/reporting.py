"""Check records and machine-readable run reports for the verification suites."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field


@dataclass
class Check:
    """One named check: a measured value against an expectation and tolerance.

    ``expected`` is either a target value (compared as |measured - expected|
    <= tolerance) or a textual bound like "<= 1e-12" when the check was built
    from a one-sided comparison; ``passed`` is always stored explicitly.
    """

    name: str
    measured: float
    expected: object
    tolerance: float
    passed: bool
    dimension: int | None = None

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "measured": self.measured,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.dimension is not None:
            out["dimension"] = self.dimension
        return out


def bound_check(name: str, measured: float, bound: float,
                dimension: int | None = None) -> Check:
    """Pass when measured <= bound."""
    return Check(name, float(measured), f"<= {bound:g}", float(bound),
                 float(measured) <= float(bound), dimension)


def floor_check(name: str, measured: float, floor: float,
                dimension: int | None = None) -> Check:
    """Pass when measured >= floor."""
    return Check(name, float(measured), f">= {floor:g}", float(floor),
                 float(measured) >= float(floor), dimension)


def value_check(name: str, measured: float, expected: float, tolerance: float,
                dimension: int | None = None) -> Check:
    """Pass when |measured - expected| <= tolerance."""
    return Check(name, float(measured), float(expected), float(tolerance),
                 abs(float(measured) - float(expected)) <= float(tolerance), dimension)


def failed_check(name: str, reason: str) -> Check:
    """A check that could not be evaluated; carries the reason as expectation."""
    return Check(name, float("nan"), reason, 0.0, False)


@dataclass
class RunReport:
    command: str
    parameters: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    wall_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "checks": [c.to_dict() for c in self.checks],
            "wall_seconds": self.wall_seconds,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def print_table(self, stream=None) -> None:
        stream = stream if stream is not None else sys.stderr
        print(f"== {self.command} ==", file=stream)
        if self.parameters:
            echo = ", ".join(f"{k}={v}" for k, v in self.parameters.items()
                             if not isinstance(v, (list, dict)))
            if echo:
                print(f"   parameters: {echo}", file=stream)
        width = max((len(c.name) for c in self.checks), default=10)
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            expected = c.expected if isinstance(c.expected, str) else f"{c.expected:.6g}"
            print(f"   {c.name:<{width}}  measured={c.measured:<12.6g} "
                  f"expected={expected:<12} tol={c.tolerance:<9.3g} {status}",
                  file=stream)
        verdict = "all checks passed" if self.passed else "CHECK FAILURES"
        print(f"   {len(self.checks)} checks in {self.wall_seconds:.2f} s: {verdict}",
              file=stream)
