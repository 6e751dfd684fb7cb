import math

import pytest
from hypothesis import given, settings, strategies as st

from nashcp.alpha import COMPLETION_ALPHA, compute_alpha_power
from nashcp.ef1 import (
    EF1_GAP,
    IdenticalInstance,
    gap_bound,
    greedy_ef1,
    identical_nsw,
    is_ef1,
    load_gap_bound,
)
from nashcp.errors import AllocationError, InstanceError, ProfileError
from nashcp.model import Allocation
from nashcp.oracle import brute_identical_opt, brute_identical_sched_opt, enumerate_ef1
from nashcp.waterfill import ThetaSpec, power_theta

small_instances = st.tuples(
    st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=6),
    st.integers(min_value=1, max_value=3),
).map(lambda pair: IdenticalInstance.from_values([float(v) for v in pair[0]], pair[1]))


class TestIdenticalInstance:
    def test_from_values_names_agents_and_items(self):
        instance = IdenticalInstance.from_values([5.0, 3.0], 2)
        assert instance.agents == ('a1', 'a2')
        assert instance.items == ('j1', 'j2')
        assert instance.value_of == {'j1': 5.0, 'j2': 3.0}

    def test_invalid_values(self):
        with pytest.raises(InstanceError):
            IdenticalInstance.from_values([0.0], 1)
        with pytest.raises(InstanceError):
            IdenticalInstance.from_values([1.0], 0)

    def test_nsw_instance_conversion(self):
        instance = IdenticalInstance.from_values([2.0, 7.0], 2)
        assert IdenticalInstance.from_nsw_instance(instance.to_nsw_instance()) == instance

    def test_non_identical_agents_are_rejected(self):
        nsw = IdenticalInstance.from_values([2.0], 2).to_nsw_instance()
        tweaked = nsw.from_dict({**nsw.to_dict(), 'values': [['a1', 'j1', 2.0], ['a2', 'j1', 3.0]]})
        with pytest.raises(InstanceError):
            IdenticalInstance.from_nsw_instance(tweaked)

    def test_partial_allocation_is_rejected(self):
        instance = IdenticalInstance.from_values([2.0, 1.0], 2)
        with pytest.raises(AllocationError):
            instance.bundle_values(Allocation({'j1': 'a1'}))


class TestIsEf1:
    def setup_method(self):
        self.instance = IdenticalInstance.from_values([5.0, 3.0, 3.0], 2)

    def test_balanced_bundles(self):
        assert is_ef1(self.instance, Allocation({'j1': 'a1', 'j2': 'a2', 'j3': 'a2'}))

    def test_envy_beyond_one_item(self):
        instance = IdenticalInstance.from_values([1.0, 3.0, 3.0], 2)
        check = is_ef1(instance, Allocation({'j1': 'a1', 'j2': 'a2', 'j3': 'a2'}))
        assert not check
        assert check.witness == ('a1', 'a2')

    def test_single_agent(self):
        instance = IdenticalInstance.from_values([1.0, 9.0], 1)
        assert is_ef1(instance, Allocation({'j1': 'a1', 'j2': 'a1'})).ok


class TestGreedy:
    def test_largest_item_alone(self):
        instance = IdenticalInstance.from_values([5.0, 3.0, 3.0], 2)
        allocation = greedy_ef1(instance)
        assert allocation.bundle('a1') == ('j1',)
        assert sorted(allocation.bundle('a2')) == ['j2', 'j3']

    def test_one_item_each(self):
        allocation = greedy_ef1(IdenticalInstance.from_values([1.0, 1.0, 1.0], 3))
        assert sorted(allocation.values()) == ['a1', 'a2', 'a3']

    def test_fewer_items_than_agents(self):
        instance = IdenticalInstance.from_values([4.0], 2)
        allocation = greedy_ef1(instance)
        assert allocation == Allocation({'j1': 'a1'})
        assert is_ef1(instance, allocation)
        assert identical_nsw(instance, allocation) == 0.0

    @given(small_instances)
    @settings(max_examples=100, deadline=None)
    def test_greedy_is_ef1(self, instance):
        assert is_ef1(instance, greedy_ef1(instance))


class TestGapBound:
    def test_two_bundles(self):
        instance = IdenticalInstance.from_values([5.0, 3.0, 3.0], 2)
        certificate = gap_bound(instance, Allocation({'j1': 'a1', 'j2': 'a2', 'j3': 'a2'}))
        assert certificate.psi == pytest.approx(5.0)
        assert certificate.phi == pytest.approx({'a1': 0.0, 'a2': 1.0})
        assert certificate.h == pytest.approx(5.5)
        assert certificate.bound == pytest.approx(5.5)
        assert certificate.nsw == pytest.approx(math.sqrt(30.0))
        assert certificate.ratio == pytest.approx(5.5 / math.sqrt(30.0))
        assert certificate.within_gap
        assert certificate.n_capped == 0

    def test_equal_bundles(self):
        instance = IdenticalInstance.from_values([2.0, 2.0, 2.0], 3)
        certificate = gap_bound(instance, greedy_ef1(instance))
        assert certificate.h == pytest.approx(2.0)
        assert certificate.bound == pytest.approx(2.0)
        assert certificate.ratio == pytest.approx(1.0)

    def test_empty_bundle_is_degenerate(self):
        instance = IdenticalInstance.from_values([4.0], 2)
        certificate = gap_bound(instance, Allocation({'j1': 'a1'}))
        assert certificate.degenerate
        assert certificate.bound == 0.0
        assert certificate.ratio == 1.0

    @given(small_instances)
    @settings(max_examples=40, deadline=None)
    def test_every_ef1_allocation_is_within_the_gap(self, instance):
        optimum, _ = brute_identical_opt(instance)
        for allocation in enumerate_ef1(instance):
            certificate = gap_bound(instance, allocation)
            assert certificate.within_gap
            assert certificate.bound >= optimum - 1e-9 * max(1.0, optimum)

    def test_gap_constant(self):
        assert EF1_GAP == pytest.approx(1.444667, abs=1e-6)


class TestLoadGapBound:
    def test_power_load_uses_alpha(self):
        instance = IdenticalInstance.from_values([5.0, 3.0, 3.0], 2)
        certificate = load_gap_bound(instance, Allocation({'j1': 'a1', 'j2': 'a2', 'j3': 'a2'}))
        assert certificate.cost == pytest.approx(25.0 + 36.0)
        assert certificate.lower == pytest.approx(2 * 5.5 ** 2)
        assert certificate.alpha == pytest.approx(compute_alpha_power(2.0).alpha)
        assert certificate.holds

    def test_completion_uses_its_constant(self):
        instance = IdenticalInstance.from_values([5.0, 3.0, 3.0], 2)
        certificate = load_gap_bound(instance, Allocation({'j1': 'a1', 'j2': 'a2', 'j3': 'a2'}), completion=True)
        assert certificate.alpha == COMPLETION_ALPHA
        assert certificate.objective == 'completion'
        assert certificate.holds

    def test_custom_theta_needs_alpha(self):
        theta = ThetaSpec('exp', lambda t: t, lambda t: t * 0 + 1.0)
        instance = IdenticalInstance.from_values([1.0], 1)
        with pytest.raises(ProfileError):
            load_gap_bound(instance, Allocation({'j1': 'a1'}), theta=theta)

    @given(small_instances, st.sampled_from([2.0, 3.0]))
    @settings(max_examples=30, deadline=None)
    def test_ef1_schedules_are_alpha_approximate(self, instance, k):
        theta = power_theta(k)
        optimum, _ = brute_identical_sched_opt(instance, theta)
        completion_optimum, _ = brute_identical_sched_opt(instance, completion=True)
        for allocation in enumerate_ef1(instance):
            certificate = load_gap_bound(instance, allocation, theta)
            assert certificate.holds
            assert certificate.lower <= optimum * (1.0 + 1e-9) + 1e-9
            completion = load_gap_bound(instance, allocation, completion=True)
            assert completion.holds
            assert completion.lower <= completion_optimum * (1.0 + 1e-9) + 1e-9
