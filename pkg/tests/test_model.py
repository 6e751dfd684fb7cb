import math

import numpy as np
import pytest

from nashcp.errors import AllocationError, InstanceError
from nashcp.model import (
    Agent,
    Allocation,
    Edge,
    FractionalAssignment,
    NswInstance,
    ObjectiveKind,
    SchedInstance,
    SchedObjective,
    bundle_values,
    ensure_valid,
    log_nsw,
    machine_loads,
    nsw_value,
    random_feasible_assignment,
    sched_cost,
    validate,
)
from tests.builders import crossed_instance, single_agent, single_machine


class TestNswInstance:
    def setup_method(self):
        self.instance = crossed_instance()

    def test_adjacency_follows_instance_order(self):
        assert self.instance.agent_items['a1'] == ('j1', 'j2')
        assert self.instance.item_agents['j2'] == ('a1', 'a2')
        assert self.instance.value('a2', 'j2') == 3.0
        assert self.instance.value('a2', 'j9') is None

    def test_uniform_builder_gives_equal_weights(self):
        assert self.instance.weights == {'a1': 0.5, 'a2': 0.5}
        assert self.instance.is_unweighted()

    def test_dict_layout_round_trip(self):
        data = self.instance.to_dict()
        assert data['values'][0] == ['a1', 'j1', 3.0]
        assert NswInstance.from_dict(data) == self.instance

    def test_malformed_dict_is_rejected(self):
        with pytest.raises(InstanceError):
            NswInstance.from_dict({'agents': [{'id': 'a1'}], 'items': [], 'values': []})


class TestValidation:
    def test_valid_instance_has_no_violations(self):
        assert validate(crossed_instance()) == []

    def test_weights_must_sum_to_one(self):
        instance = NswInstance(
            (Agent('a1', 0.5), Agent('a2', 0.6)),
            ('j1',),
            (Edge('a1', 'j1', 1.0), Edge('a2', 'j1', 1.0)),
        )
        messages = [str(v) for v in validate(instance)]
        assert any('weights sum to 1.1' in m for m in messages)

    def test_isolated_item_is_named(self):
        instance = NswInstance((Agent('a1', 1.0),), ('j1', 'j2'), (Edge('a1', 'j1', 2.0),))
        violations = validate(instance)
        assert len(violations) == 1
        assert 'j2' in violations[0].location

    def test_ensure_valid_lists_every_violation(self):
        instance = NswInstance((Agent('a1', -1.0),), ('j1',), (Edge('a1', 'j1', 0.0),))
        with pytest.raises(InstanceError) as info:
            ensure_valid(instance)
        assert len(info.value.violations) >= 3

    def test_scheduling_matrix_must_be_positive(self):
        instance = SchedInstance(('m1',), ('j1', 'j2'), [[1.0, 0.0]])
        violations = validate(instance)
        assert [v.location for v in violations] == ['p[m1, j2]']

    def test_power_exponent_below_one_is_reported(self):
        instance = single_machine([1.0], SchedObjective.power_load(0.5))
        assert any(v.location == 'objective' for v in validate(instance))


class TestEvaluation:
    def test_single_agent_sums_its_bundle(self):
        instance = single_agent([3.0, 4.0])
        allocation = Allocation({'j1': 'a1', 'j2': 'a1'})
        assert nsw_value(instance, allocation) == pytest.approx(7.0)

    def test_equal_bundles_give_their_value(self):
        instance = crossed_instance()
        assert nsw_value(instance, Allocation({'j1': 'a1', 'j2': 'a2'})) == pytest.approx(3.0)

    def test_unequal_bundles_give_geometric_mean(self):
        instance = NswInstance.uniform(
            ['a1', 'a2'],
            ['j1', 'j2'],
            {('a1', 'j1'): 4.0, ('a2', 'j2'): 1.0},
        )
        allocation = Allocation({'j1': 'a1', 'j2': 'a2'})
        assert nsw_value(instance, allocation) == pytest.approx(2.0)
        assert log_nsw(instance, allocation) == pytest.approx(math.log(2.0))

    def test_empty_bundle_gives_zero(self):
        instance = crossed_instance()
        allocation = Allocation({'j1': 'a1', 'j2': 'a1'})
        assert nsw_value(instance, allocation) == 0.0
        assert log_nsw(instance, allocation) == -math.inf

    def test_non_adjacent_assignment_is_an_error(self):
        instance = NswInstance.uniform(['a1', 'a2'], ['j1'], {('a1', 'j1'): 1.0})
        with pytest.raises(AllocationError):
            bundle_values(instance, Allocation({'j1': 'a2'}))

    def test_power_load_cost(self):
        instance = SchedInstance(('m1', 'm2'), ('j1', 'j2'), [[3.0, 9.0], [9.0, 4.0]])
        allocation = Allocation({'j1': 'm1', 'j2': 'm2'})
        assert machine_loads(instance, allocation) == {'m1': 3.0, 'm2': 4.0}
        assert sched_cost(instance, allocation) == pytest.approx(25.0)

    def test_completion_cost(self):
        two_jobs = single_machine([1.0, 1.0], SchedObjective.completion())
        assert sched_cost(two_jobs, Allocation({'j1': 'm1', 'j2': 'm1'})) == pytest.approx(3.0)
        one_job = single_machine([2.0], SchedObjective.completion())
        assert sched_cost(one_job, Allocation({'j1': 'm1'})) == pytest.approx(4.0)


class TestSchedObjective:
    def test_parse_cli_spellings(self):
        assert SchedObjective.parse('l2') == SchedObjective.power_load(2.0)
        assert SchedObjective.parse('lk:3').k == 3.0
        assert SchedObjective.parse('Completion').kind is ObjectiveKind.COMPLETION

    def test_unknown_spelling_is_rejected(self):
        with pytest.raises(InstanceError):
            SchedObjective.parse('lk:abc')

    def test_instance_file_layout(self):
        instance = single_machine([2.0, 5.0], SchedObjective.power_load(3.0))
        data = instance.to_dict()
        assert data['objective'] == {'kind': 'lk', 'k': 3.0}
        restored = SchedInstance.from_dict(data)
        assert restored.objective.k == 3.0
        assert np.array_equal(restored.p, instance.p)

    def test_ragged_matrix_is_rejected(self):
        with pytest.raises(InstanceError):
            SchedInstance.from_dict({'machines': ['m1', 'm2'], 'jobs': ['j1'], 'p': [[1.0]]})


class TestFractionalAssignment:
    def test_zero_entries_are_dropped(self):
        x = FractionalAssignment({('a1', 'j1'): 0.25, ('a2', 'j1'): 0.75, ('a2', 'j2'): 0.0})
        assert len(x) == 2
        assert x.object_mass('j1') == pytest.approx(1.0)
        assert x.get_mass('a2', 'j2') == 0.0

    def test_from_allocation_is_integral(self):
        x = FractionalAssignment.from_allocation(Allocation({'j1': 'a1', 'j2': 'a1'}))
        assert x.row('a1') == {'j1': 1.0, 'j2': 1.0}
        assert x.player_mass('a1') == 2.0

    def test_random_feasible_assignment_keeps_agents_supplied(self):
        instance = crossed_instance()
        anchor = FractionalAssignment({('a1', 'j1'): 1.0, ('a2', 'j2'): 1.0})
        rng = np.random.default_rng(7)
        for _ in range(10):
            x = random_feasible_assignment(instance, anchor, rng)
            for agent in instance.agent_ids:
                assert x.player_mass(agent) >= 1.0 - 1e-9
            for item in instance.items:
                assert x.object_mass(item) == pytest.approx(1.0)
