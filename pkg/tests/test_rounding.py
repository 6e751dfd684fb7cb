import math

import numpy as np
import pytest

from nashcp.commands import WeightScheme, generate_nsw, generate_sched
from nashcp.errors import DecompositionError, ProfileError
from nashcp.model import Allocation, FractionalAssignment, NswInstance, SchedObjective, log_nsw, nsw_value
from nashcp.relax import solve_cp_nsw, solve_cp_sched
from nashcp.rounding import (
    Group,
    GroupSystem,
    RoundingMode,
    best_allocation,
    decompose,
    expected_value,
    partition_groups,
    round_solution,
    sample,
    sample_index,
)
from tests.builders import crossed_instance, identical_machines, single_agent

EPS = 1e-2


def half_and_half() -> tuple:
    instance = NswInstance.uniform(
        ['a1', 'a2'],
        ['j1', 'j2'],
        {(a, j): 2.0 for a in ('a1', 'a2') for j in ('j1', 'j2')},
    )
    x = FractionalAssignment({(a, j): 0.5 for a in ('a1', 'a2') for j in ('j1', 'j2')})
    return instance, x


class TestPartitionGroups:
    def test_mass_is_poured_in_value_order(self):
        instance = NswInstance.uniform(['a1'], ['a', 'b', 'c'], {('a1', 'a'): 4.0, ('a1', 'b'): 2.0, ('a1', 'c'): 1.0})
        x = FractionalAssignment({('a1', 'a'): 0.5, ('a1', 'b'): 1.0, ('a1', 'c'): 1.0})
        groups = partition_groups(x, instance).groups_of('a1')
        assert [g.as_dict() for g in groups] == [
            {'a': 0.5, 'b': 0.5},
            {'b': 0.5, 'c': 0.5},
            {'c': 0.5},
        ]
        assert [g.saturated for g in groups] == [True, True, False]
        assert groups[0].key == 'a1#1'

    def test_integral_assignment_gives_singletons(self):
        instance = crossed_instance()
        x = FractionalAssignment.from_allocation(Allocation({'j1': 'a1', 'j2': 'a2'}))
        system = partition_groups(x, instance)
        assert [g.as_dict() for g in system.groups] == [{'j1': 1.0}, {'j2': 1.0}]

    def test_unit_masses_stay_separate(self):
        instance = single_agent([4.0, 1.0])
        x = FractionalAssignment({('a1', 'j1'): 1.0, ('a1', 'j2'): 1.0})
        groups = partition_groups(x, instance).groups
        assert [g.as_dict() for g in groups] == [{'j1': 1.0}, {'j2': 1.0}]

    def test_ties_break_by_object_id(self):
        instance = single_agent([2.0, 2.0])
        x = FractionalAssignment({('a1', 'j2'): 1.0, ('a1', 'j1'): 1.0})
        assert partition_groups(x, instance).orders['a1'] == ('j1', 'j2')

    def test_agent_below_unit_mass_is_rejected(self):
        instance = crossed_instance()
        x = FractionalAssignment({('a1', 'j1'): 0.5, ('a2', 'j1'): 0.5, ('a2', 'j2'): 1.0})
        with pytest.raises(ProfileError):
            partition_groups(x, instance)

    def test_scheduling_groups_allow_partial_mass(self):
        instance = identical_machines(jobs=1)
        x = FractionalAssignment({('m1', 'j1'): 0.25, ('m2', 'j1'): 0.75})
        system = partition_groups(x, instance)
        assert len(system.groups) == 2
        assert not any(g.saturated for g in system.groups)


class TestDecompose:
    def test_integral_matching_is_its_own_decomposition(self):
        instance = crossed_instance()
        allocation = Allocation({'j1': 'a1', 'j2': 'a2'})
        decomposition = decompose(partition_groups(FractionalAssignment.from_allocation(allocation), instance))
        assert len(decomposition) == 1
        assert decomposition.terms[0].weight == pytest.approx(1.0)
        assert decomposition.terms[0].allocation == allocation

    def test_doubly_stochastic_square(self):
        instance, x = half_and_half()
        decomposition = decompose(partition_groups(x, instance))
        assert len(decomposition) == 2
        assert np.allclose(decomposition.weights, [0.5, 0.5])
        allocations = {t.allocation for t in decomposition.terms}
        assert allocations == {
            Allocation({'j1': 'a1', 'j2': 'a2'}),
            Allocation({'j1': 'a2', 'j2': 'a1'}),
        }

    def test_every_saturated_group_is_matched(self):
        instance, x = half_and_half()
        system = partition_groups(x, instance)
        for term in decompose(system).terms:
            assert set(term.matching) == {g.key for g in system.groups if g.saturated}

    @pytest.mark.parametrize('seed', range(8))
    def test_marginals_reproduce_nsw_solution(self, seed):
        instance = generate_nsw(3, 6, seed, WeightScheme.DIRICHLET)
        solution = solve_cp_nsw(instance, EPS)
        decomposition = decompose(partition_groups(solution.x, instance))
        assert decomposition.weights.sum() == pytest.approx(1.0)
        assert np.all(decomposition.weights > 0.0)
        marginals = decomposition.marginals()
        for key in set(marginals) | set(solution.x):
            assert marginals.get(key, 0.0) == pytest.approx(solution.x.get_mass(*key), abs=1e-5)
        for term in decomposition.terms:
            assert len(term.allocation) == instance.m

    @pytest.mark.parametrize('seed', range(4))
    def test_marginals_reproduce_sched_solution(self, seed):
        instance = generate_sched(5, 3, seed)
        solution = solve_cp_sched(instance, EPS)
        decomposition = decompose(partition_groups(solution.x, instance))
        marginals = decomposition.marginals()
        for key in set(marginals) | set(solution.x):
            assert marginals.get(key, 0.0) == pytest.approx(solution.x.get_mass(*key), abs=1e-5)

    def test_uncoverable_saturated_groups_raise(self):
        system = GroupSystem(
            (
                Group('a1', 1, (('j1', 1.0),), True),
                Group('a2', 1, (('j1', 1.0),), True),
            ),
            {'a1': ('j1',), 'a2': ('j1',)},
        )
        with pytest.raises(DecompositionError):
            decompose(system)

    def test_object_mass_short_of_one_raises(self):
        system = GroupSystem(
            (Group('a1', 1, (('j1', 1.0 - 5e-7),), False),),
            {'a1': ('j1',)},
        )
        with pytest.raises(DecompositionError) as info:
            decompose(system)
        assert 'remaining mass' in str(info.value)


class TestSelection:
    def setup_method(self):
        instance, x = half_and_half()
        self.instance = instance
        self.decomposition = decompose(partition_groups(x, instance))

    def test_single_term_is_always_sampled(self):
        instance = crossed_instance()
        x = FractionalAssignment.from_allocation(Allocation({'j1': 'a1', 'j2': 'a2'}))
        decomposition = decompose(partition_groups(x, instance))
        for seed in range(5):
            assert sample(decomposition, seed) == Allocation({'j1': 'a1', 'j2': 'a2'})

    def test_sampling_is_deterministic_per_seed(self):
        assert sample(self.decomposition, 42) == sample(self.decomposition, 42)

    def test_sampling_follows_the_weights(self):
        draws = np.array([sample_index(self.decomposition, seed) for seed in range(10_000)])
        assert abs(np.mean(draws == 0) - 0.5) <= 0.02

    def test_best_term_on_single_term(self):
        instance = crossed_instance()
        x = FractionalAssignment.from_allocation(Allocation({'j1': 'a1', 'j2': 'a2'}))
        outcome = best_allocation(decompose(partition_groups(x, instance)), instance)
        assert outcome.value == pytest.approx(3.0)
        assert outcome.expected_value == pytest.approx(math.log(3.0))
        assert outcome.terms == 1

    def test_ties_keep_the_first_term(self):
        outcome = best_allocation(self.decomposition, self.instance)
        assert outcome.term_index == 0
        assert outcome.value == pytest.approx(2.0)

    def test_expected_value_is_weighted_log_nsw(self):
        expected = sum(
            t.weight * log_nsw(self.instance, t.allocation) for t in self.decomposition.terms
        )
        assert expected_value(self.decomposition, self.instance) == pytest.approx(expected)


class TestRoundSolution:
    def test_crossed_instance_rounds_to_the_optimum(self):
        instance = crossed_instance()
        outcome = round_solution(instance, solve_cp_nsw(instance, EPS))
        assert outcome.value == pytest.approx(3.0)
        assert outcome.allocation == Allocation({'j1': 'a1', 'j2': 'a2'})

    @pytest.mark.parametrize('seed', range(5))
    def test_best_term_beats_the_expectation(self, seed):
        instance = generate_nsw(3, 6, seed, WeightScheme.DIRICHLET)
        outcome = round_solution(instance, solve_cp_nsw(instance, EPS), RoundingMode.BEST)
        assert math.log(outcome.value) >= outcome.expected_value - 1e-9
        assert nsw_value(instance, outcome.allocation) == pytest.approx(outcome.value)

    def test_sampled_mode_is_reproducible(self):
        instance = generate_nsw(2, 5, 3)
        solution = solve_cp_nsw(instance, EPS)
        first = round_solution(instance, solution, RoundingMode.SAMPLE, seed=9)
        second = round_solution(instance, solution, RoundingMode.SAMPLE, seed=9)
        assert first.allocation == second.allocation
        assert first.to_dict()['terms'] == first.terms

    def test_scheduling_picks_the_cheapest_term(self):
        instance = identical_machines(jobs=2)
        outcome = round_solution(instance, solve_cp_sched(instance, EPS))
        assert outcome.value == pytest.approx(2.0)

    def test_completion_rounding(self):
        instance = identical_machines(jobs=2, objective=SchedObjective.completion())
        outcome = round_solution(instance, solve_cp_sched(instance, EPS))
        assert outcome.value == pytest.approx(2.0)
