import math

import numpy as np
import pytest

from nashcp.commands import generate_nsw
from nashcp.errors import FsrError, InstanceError
from nashcp.fisher import (
    UNWEIGHTED_ONLY,
    FsrSolution,
    allocation_to_fsr,
    construct_from_x,
    equivalence_report,
    fsr_objective,
    integrality_gap_family,
    shared_items_family,
)
from nashcp.model import (
    Agent,
    Allocation,
    Edge,
    FractionalAssignment,
    NswInstance,
    nsw_value,
    random_feasible_assignment,
)
from nashcp.oracle import brute_nsw_opt
from nashcp.relax import concave_value_nsw, solve_cp_nsw
from tests.builders import crossed_instance, single_agent

EPS = 1e-3


def flat_pair() -> NswInstance:
    return NswInstance.uniform(
        ['a1', 'a2'],
        ['j1', 'j2'],
        {(a, j): 2.0 for a in ('a1', 'a2') for j in ('j1', 'j2')},
    )


class TestFsrObjective:
    def test_integral_spending(self):
        instance = NswInstance.uniform(['a1', 'a2'], ['j1', 'j2'], {('a1', 'j1'): 3.0, ('a2', 'j2'): 3.0})
        fsr = FsrSolution({('a1', 'j1'): 1.0, ('a2', 'j2'): 1.0}, {'j1': 1.0, 'j2': 1.0})
        assert fsr_objective(instance, fsr) == pytest.approx(math.log(3.0))

    def test_split_spending(self):
        fsr = FsrSolution({(a, j): 0.5 for a in ('a1', 'a2') for j in ('j1', 'j2')}, {'j1': 1.0, 'j2': 1.0})
        assert fsr_objective(flat_pair(), fsr) == pytest.approx(math.log(2.0))

    def test_infeasible_spending_is_reported(self):
        fsr = FsrSolution({('a1', 'j1'): 0.5, ('a2', 'j2'): 1.0}, {'j1': 0.5, 'j2': 1.0})
        problems = fsr.violations(flat_pair())
        assert problems == ['agent a1 spends 0.5 instead of 1']
        with pytest.raises(FsrError):
            fsr_objective(flat_pair(), fsr)

    def test_weighted_instance_is_rejected(self):
        instance = NswInstance(
            (Agent('a1', 0.9), Agent('a2', 0.1)),
            ('j1', 'j2'),
            (Edge('a1', 'j1', 1.0), Edge('a2', 'j2', 1.0)),
        )
        with pytest.raises(FsrError, match=UNWEIGHTED_ONLY):
            equivalence_report(instance, EPS)


class TestConstruction:
    def test_unit_mass_agents_spend_their_fractions(self):
        instance = flat_pair()
        x = FractionalAssignment({(a, j): 0.5 for a in ('a1', 'a2') for j in ('j1', 'j2')})
        fsr = construct_from_x(instance, x)
        assert all(b == pytest.approx(0.5) for b in fsr.spending.values())
        assert fsr.q == pytest.approx({'j1': 1.0, 'j2': 1.0})
        assert fsr_objective(instance, fsr) == pytest.approx(math.log(2.0))

    def test_single_agent_is_exact(self):
        instance = single_agent([4.0, 2.0, 1.0])
        x = FractionalAssignment({('a1', j): 1.0 for j in instance.items})
        fsr = construct_from_x(instance, x)
        assert [fsr.spending[('a1', j)] for j in instance.items] == pytest.approx([4 / 7, 2 / 7, 1 / 7])
        assert fsr_objective(instance, fsr) == pytest.approx(math.log(7.0))

    @pytest.mark.parametrize('seed', range(5))
    def test_construction_dominates_the_concave_value(self, seed):
        instance = generate_nsw(3, 5, seed)
        anchor = solve_cp_nsw(instance, 1e-2).x
        rng = np.random.default_rng(seed)
        for _ in range(5):
            x = random_feasible_assignment(instance, anchor, rng)
            fsr = construct_from_x(instance, x)
            assert fsr.violations(instance) == []
            assert fsr_objective(instance, fsr) >= concave_value_nsw(instance, x) - 1e-6

    def test_allocation_embedding_matches_its_nsw(self):
        instance = crossed_instance()
        allocation = Allocation({'j1': 'a1', 'j2': 'a1'})
        with pytest.raises(FsrError):
            allocation_to_fsr(instance, allocation)
        allocation = Allocation({'j1': 'a1', 'j2': 'a2'})
        fsr = allocation_to_fsr(instance, allocation)
        assert fsr_objective(instance, fsr) == pytest.approx(math.log(nsw_value(instance, allocation)))


class TestEquivalence:
    def test_crossed_instance_within_band(self):
        report = equivalence_report(crossed_instance(), EPS)
        assert abs(report.gap) <= math.log1p(EPS) + 1e-6
        assert report.within_band
        assert report.to_dict()['pass']

    def test_single_agent_has_no_gap(self):
        report = equivalence_report(single_agent([3.0, 5.0]), EPS)
        assert abs(report.fsr_value - math.log(8.0)) <= 1e-6
        assert report.within_band

    @pytest.mark.parametrize('seed', range(4))
    def test_random_instances(self, seed):
        assert equivalence_report(generate_nsw(3, 5, seed), 1e-2).within_band


class TestIntegralityGapFamily:
    def test_shape(self):
        instance = integrality_gap_family(3, 8.0, 2)
        assert instance.agent_ids == ('a1', 'a2', 'a3')
        assert instance.items == ('j1', 'j2', 'j3')
        assert instance.value('a2', 'j1') == 8.0
        assert instance.value('a2', 'j3') == 1.0
        assert instance.is_unweighted()

    def test_guards(self):
        with pytest.raises(InstanceError):
            integrality_gap_family(3, 4.0, 1)
        with pytest.raises(InstanceError):
            integrality_gap_family(2, 0.0, 1)

    def test_relaxation_exceeds_the_integral_optimum(self):
        instance = integrality_gap_family(2, 8.0, 1)
        solution = solve_cp_nsw(instance, 1e-2)
        assert math.exp(solution.value) >= math.sqrt(8.0) - 1e-6


class TestSharedItemsFamily:
    def test_shape(self):
        instance = shared_items_family(3, 2, 20.0, 2)
        assert instance.items == ('s1', 's2', 'p1_1', 'p1_2', 'p2_1', 'p2_2', 'p3_1', 'p3_2')
        assert instance.value('a3', 's2') == 20.0
        assert instance.value('a2', 'p2_1') == 0.5
        assert instance.value('a1', 'p2_1') is None
        assert instance.item_agents['p3_2'] == ('a3',)
        assert instance.is_unweighted()

    def test_guards(self):
        with pytest.raises(InstanceError):
            shared_items_family(3, 4, 20.0, 2)
        with pytest.raises(InstanceError):
            shared_items_family(3, 0, 20.0, 2)
        with pytest.raises(InstanceError):
            shared_items_family(3, 2, 20.0, 0)
        with pytest.raises(InstanceError):
            shared_items_family(3, 2, -1.0, 2)

    def test_optimum_gives_each_shared_item_to_a_different_agent(self):
        optimum, allocation = brute_nsw_opt(shared_items_family(4, 2, 9.0, 2))
        assert optimum == pytest.approx(10.0 ** 0.5)
        assert allocation['s1'] != allocation['s2']

    def test_ratio_approaches_the_ef1_gap(self):
        instance = shared_items_family(5, 3, 50.0, 4)
        solution = solve_cp_nsw(instance, 1e-2)
        optimum, _ = brute_nsw_opt(instance)
        assert optimum == pytest.approx(51.0 ** 0.6)
        ratio = math.exp(solution.value) / optimum
        assert ratio >= 1.42
        assert ratio <= math.exp(1.0 / math.e) * (1.0 + 1e-2) + 1e-9
