"""
EF1 Gap Certificates

Given an allocation for identical agents with bundle values V_i, let
ψ = min_i V_i, φ_i = V_i − ψ and h the unique level with

    (1/n) Σ_i min{φ_i, h} + ψ = h.

For goods, (Π_i max{φ_i, h})^{1/n} bounds the NSW optimum from above, and an
EF1 allocation stays within e^{1/e} of it. For identical machines with a
convex load cost θ, Σ_i θ(max{φ_i, h}) bounds the optimum from below, and an
EF1 allocation costs at most α times that bound.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .identical import IdenticalInstance, identical_nsw
from ..alpha import COMPLETION_ALPHA, compute_alpha_power
from ..config import RESIDUAL_TOL
from ..errors import InvariantError, ProfileError
from ..model import Allocation
from ..waterfill import ThetaSpec, level_residual, power_theta, solve_level

EF1_GAP = math.exp(1.0 / math.e)


def _liquid_profile(instance: IdenticalInstance, allocation: Allocation) -> Tuple[float, np.ndarray, float]:
    totals = instance.bundle_values(allocation)
    bundle = np.array([totals[a] for a in instance.agents], dtype=float)
    psi = float(bundle.min())
    phi = bundle - psi
    if psi <= 0.0:
        return psi, phi, 0.0
    masses = np.full(phi.size, 1.0 / instance.n)
    positive = phi > 0.0
    h = solve_level(phi[positive], masses[positive], base=psi)
    if level_residual(phi, masses, h, base=psi) > RESIDUAL_TOL * max(1.0, h):
        raise InvariantError(f"Gap level {h} does not solve its equation")
    return psi, phi, h


@dataclass(frozen=True)
class GapCertificate:
    """
    Water-fill upper bound on the NSW optimum of an identical-agent instance.

    Attributes:
        psi: Smallest bundle value
        phi: V_i − ψ per agent
        h: Water level
        bound: (Π max{φ_i, h})^{1/n}; 0 or inf when ψ = 0
        nsw: NSW of the allocation
        n_capped: Agents with φ_i > h
        n_filled: Agents with φ_i <= h
        degenerate: True when ψ = 0
    """
    psi: float
    phi: Dict[str, float]
    h: float
    bound: float
    nsw: float
    n_capped: int
    n_filled: int
    degenerate: bool = False

    @property
    def ratio(self) -> float:
        """bound / NSW; 1 when both vanish."""
        if self.nsw > 0.0:
            return self.bound / self.nsw
        return 1.0 if self.bound == 0.0 else math.inf

    @property
    def within_gap(self) -> bool:
        return self.ratio <= EF1_GAP + 1e-9

    def to_dict(self) -> Dict[str, Any]:
        return {
            'psi': self.psi,
            'phi': dict(self.phi),
            'h': self.h,
            'bound': self.bound,
            'nsw': self.nsw,
            'ratio': self.ratio,
            'n_capped': self.n_capped,
            'n_filled': self.n_filled,
            'degenerate': self.degenerate,
            'pass': self.within_gap,
        }


def gap_bound(instance: IdenticalInstance, allocation: Allocation) -> GapCertificate:
    """
    Compute ψ, φ, h and the upper bound (Π max{φ_i, h})^{1/n}.

    With ψ = 0 some bundle is empty: the bound is 0 when there are fewer items
    than agents (every allocation has NSW 0) and inf otherwise.

    Raises:
        AllocationError: If the allocation is not total
    """
    psi, phi, h = _liquid_profile(instance, allocation)
    phi_map = dict(zip(instance.agents, phi.tolist()))
    nsw = identical_nsw(instance, allocation)
    if psi <= 0.0:
        bound = 0.0 if instance.m < instance.n else math.inf
        return GapCertificate(psi, phi_map, 0.0, bound, nsw, 0, instance.n, degenerate=True)
    bound = float(np.exp(np.mean(np.log(np.maximum(phi, h)))))
    capped = int(np.count_nonzero(phi > h))
    return GapCertificate(psi, phi_map, h, bound, nsw, capped, instance.n - capped)


@dataclass(frozen=True)
class LoadGapCertificate:
    """
    Water-fill lower bound on the optimal cost of an identical-machine schedule.

    Attributes:
        psi: Smallest machine load
        phi: load_i − ψ per machine
        h: Water level
        cost: Cost of the schedule after liquidization
        lower: Lower bound on the optimum of the liquidized instance
        alpha: Factor the cost is checked against
        objective: 'theta' or 'completion'
    """
    psi: float
    phi: Dict[str, float]
    h: float
    cost: float
    lower: float
    alpha: float
    objective: str

    @property
    def ratio(self) -> float:
        return self.cost / self.lower if self.lower > 0.0 else 1.0

    @property
    def holds(self) -> bool:
        return self.cost <= self.alpha * self.lower + 1e-9 * max(1.0, self.lower)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'psi': self.psi,
            'phi': dict(self.phi),
            'h': self.h,
            'cost': self.cost,
            'lower': self.lower,
            'alpha': self.alpha,
            'ratio': self.ratio,
            'objective': self.objective,
            'pass': self.holds,
        }


def load_gap_bound(
    instance: IdenticalInstance,
    allocation: Allocation,
    theta: Optional[ThetaSpec] = None,
    completion: bool = False,
    alpha: Optional[float] = None,
) -> LoadGapCertificate:
    """
    Certify an EF1 schedule on identical machines; item values are read as job sizes.

    Power load: cost Σ θ(φ_i + ψ) against the lower bound Σ θ(max{φ_i, h}).
    Completion time: cost ½Σ((φ_i + ψ)² + φ_i²) against ½Σ(max{φ_i, h}² + φ_i²),
    where φ_i stands for the one job left solid on machine i.

    Args:
        instance: Identical machines (agents) and jobs (items)
        allocation: Jobs to machines
        theta: Load cost; t² when omitted
        completion: Use the completion-time objective instead of θ
        alpha: Factor to check; α(k) or (1+√2)/2 when omitted

    Raises:
        ProfileError: If alpha is omitted for a θ without an exponent
    """
    psi, phi, h = _liquid_profile(instance, allocation)
    phi_map = dict(zip(instance.agents, phi.tolist()))
    capped = np.maximum(phi, h)
    if completion:
        cost = 0.5 * float(np.sum((phi + psi) ** 2 + phi ** 2))
        lower = 0.5 * float(np.sum(capped ** 2 + phi ** 2))
        factor = COMPLETION_ALPHA if alpha is None else alpha
        return LoadGapCertificate(psi, phi_map, h, cost, lower, factor, 'completion')

    theta = theta or power_theta(2.0)
    if alpha is None:
        if theta.exponent is None:
            raise ProfileError(f"alpha must be supplied for {theta.name}")
        alpha = compute_alpha_power(theta.exponent).alpha
    cost = float(np.sum(theta(phi + psi)))
    lower = float(np.sum(theta(capped)))
    return LoadGapCertificate(psi, phi_map, h, cost, lower, alpha, 'theta')
