"""
Machine-readable command reports.

Every ratio that a command certifies is carried as a RatioCheck naming the
bound it was compared with and whether it passed.
"""

import hashlib
import json
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from ..model import NswInstance, SchedInstance


def instance_digest(instance: Union[NswInstance, SchedInstance]) -> str:
    """sha3-256 of the canonical JSON form of an instance."""
    canonical = json.dumps(instance.to_dict(), sort_keys=True)
    return hashlib.sha3_256(canonical.encode()).hexdigest()


class RatioCheck(BaseModel):
    name: str = Field(..., description="Property being certified")
    value: float = Field(..., description="Observed quantity")
    bound: float = Field(..., description="Bound the quantity is compared with")
    relation: str = Field(..., description="'>=' or '<='")
    passed: bool = Field(..., description="Whether value relation bound holds")
    evaluations: int = Field(1, description="Number of instances or points the worst case was taken over")

    @classmethod
    def at_least(cls, name: str, value: float, bound: float) -> 'RatioCheck':
        return cls(name=name, value=value, bound=bound, relation='>=', passed=bool(value >= bound))

    @classmethod
    def at_most(cls, name: str, value: float, bound: float) -> 'RatioCheck':
        return cls(name=name, value=value, bound=bound, relation='<=', passed=bool(value <= bound))

    @property
    def slack(self) -> float:
        return self.value - self.bound if self.relation == '>=' else self.bound - self.value


class SolveReport(BaseModel):
    command: str = Field(..., description="solve-nsw or solve-sched")
    instance_digest: str = Field(..., description="sha3-256 of the canonical instance")
    objective: str = Field(..., description="'nsw', an 'lk:K' label or 'completion'")
    eps: float = Field(..., description="Grid precision")
    seed: int = Field(..., description="Sampling seed")
    rounding: str = Field(..., description="'best' or 'sample'")
    cp_value: float = Field(..., description="Optimal value of the discretized relaxation")
    rounded_value: float = Field(..., description="NSW value or cost of the rounded allocation")
    expected_value: float = Field(..., description="λ-weighted Σ w_i ln v_i (NSW) or expected cost")
    terms: int = Field(..., description="Number of matchings in the decomposition")
    allocation: Dict[str, str] = Field(..., description="Object -> player")
    checks: List[RatioCheck] = Field(default_factory=list)
    fsr_gap: Optional[float] = Field(None, description="f-SR construction value minus cp value (unweighted NSW)")
    lp_iterations: int = 0
    lp_rounds: int = 0
    timings: Dict[str, float] = Field(default_factory=dict, description="Seconds per stage")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def summary(self) -> str:
        verdict = 'PASS' if self.passed else 'FAIL'
        return (
            f"{self.command} [{self.objective}] cp={self.cp_value:.6g} rounded={self.rounded_value:.6g} "
            f"expected={self.expected_value:.6g} terms={self.terms} checks={verdict}"
        )


class VerifyReport(BaseModel):
    suite: str = Field(..., description="Suite name")
    instances: int = Field(..., description="Instances examined")
    eps: float = Field(..., description="Grid precision used by solving suites")
    seed: int = Field(..., description="Seed of the generated sweep")
    checks: List[RatioCheck] = Field(default_factory=list, description="Worst case per property")
    failures: List[str] = Field(default_factory=list, description="One line per failed evaluation")
    extra: Dict[str, Any] = Field(default_factory=dict, description="Suite-specific observations")
    timings: Dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and all(check.passed for check in self.checks)

    def summary(self) -> str:
        verdict = 'PASS' if self.passed else 'FAIL'
        lines = [f"suite {self.suite}: {verdict} over {self.instances} instances"]
        for check in self.checks:
            mark = 'ok' if check.passed else 'FAILED'
            lines.append(
                f"  {check.name}: {check.value:.9g} {check.relation} {check.bound:.9g} "
                f"[{mark}, {check.evaluations} evaluations]"
            )
        lines += [f"  failure: {line}" for line in self.failures[:20]]
        return '\n'.join(lines)
