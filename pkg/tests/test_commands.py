import json
import math

import pytest

from nashcp.commands import (
    RatioCheck,
    Suite,
    WeightScheme,
    generate_identical,
    generate_nsw,
    generate_sched,
    instance_digest,
    instance_to_json,
    load_nsw_instance,
    load_sched_instance,
    run_solve_nsw,
    run_solve_sched,
    run_verify,
)
from nashcp.errors import InfeasibleError, InstanceError, InstanceParseError
from nashcp.model import SchedObjective
from nashcp.rounding import RoundingMode
from tests.builders import crossed_instance, identical_machines

EPS = 1e-2


def write_json(path, data):
    path.write_text(json.dumps(data), encoding='utf-8')
    return path


class TestInstanceFiles:
    def test_nsw_file_is_read(self, tmp_path):
        path = tmp_path / 'crossed.json'
        path.write_text(instance_to_json(crossed_instance()), encoding='utf-8')
        instance = load_nsw_instance(path)
        assert instance.agent_ids == ('a1', 'a2')
        assert instance.value('a2', 'j2') == 3.0

    def test_malformed_json_reports_its_position(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{\n  "agents": [\n', encoding='utf-8')
        with pytest.raises(InstanceParseError) as info:
            load_nsw_instance(path)
        assert info.value.line is not None
        assert 'line' in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceError):
            load_nsw_instance(tmp_path / 'absent.json')

    def test_layout_errors_are_listed(self, tmp_path):
        path = write_json(tmp_path / 'layout.json', {'agents': [{'id': 'a1'}], 'items': [], 'values': []})
        with pytest.raises(InstanceError) as info:
            load_nsw_instance(path)
        assert any('weight' in v for v in info.value.violations)

    def test_weights_must_sum_to_one(self, tmp_path):
        path = write_json(tmp_path / 'weights.json', {
            'agents': [{'id': 'a1', 'weight': 0.5}, {'id': 'a2', 'weight': 0.2}],
            'items': ['j1', 'j2'],
            'values': [['a1', 'j1', 1.0], ['a2', 'j2', 1.0]],
        })
        with pytest.raises(InstanceError) as info:
            load_nsw_instance(path)
        assert 'weights sum' in str(info.value) or any('weights sum' in str(v) for v in info.value.violations)

    def test_sched_objective_override(self, tmp_path):
        path = tmp_path / 'machines.json'
        path.write_text(instance_to_json(identical_machines()), encoding='utf-8')
        assert load_sched_instance(path).objective == SchedObjective.power_load(2.0)
        overridden = load_sched_instance(path, SchedObjective.completion())
        assert overridden.objective == SchedObjective.completion()

    def test_ragged_processing_times(self, tmp_path):
        path = write_json(tmp_path / 'ragged.json', {'machines': ['m1', 'm2'], 'jobs': ['j1'], 'p': [[1.0]]})
        with pytest.raises(InstanceError):
            load_sched_instance(path)

    def test_json_text_is_stable(self):
        assert instance_to_json(generate_nsw(3, 4, 5)) == instance_to_json(generate_nsw(3, 4, 5))
        assert instance_to_json(crossed_instance()).endswith('\n')


class TestGenerators:
    def test_nsw_is_seeded(self):
        first = generate_nsw(3, 5, 1, WeightScheme.DIRICHLET)
        assert instance_digest(first) == instance_digest(generate_nsw(3, 5, 1, WeightScheme.DIRICHLET))
        assert instance_digest(first) != instance_digest(generate_nsw(3, 5, 2, WeightScheme.DIRICHLET))
        assert sum(a.weight for a in first.agents) == pytest.approx(1.0)

    def test_sparse_instances_keep_every_item_reachable(self):
        instance = generate_nsw(3, 6, 4, density=0.2)
        assert all(instance.item_agents[j] for j in instance.items)
        assert all(instance.agent_items[a] for a in instance.agent_ids)

    def test_sizes_and_density_are_checked(self):
        with pytest.raises(InstanceError):
            generate_nsw(0, 2, 0)
        with pytest.raises(InstanceError):
            generate_nsw(2, 2, 0, density=0.0)
        with pytest.raises(InstanceError):
            generate_sched(1, 0, 0)

    def test_sched_shape(self):
        instance = generate_sched(5, 2, 3, SchedObjective.parse('lk:3'))
        assert instance.p.shape == (2, 5)
        assert instance.objective.k == 3.0

    def test_identical_values(self):
        instance = generate_identical(2, 4, 9, high=3)
        assert instance.n == 2
        assert all(1.0 <= v <= 3.0 for v in instance.values)


class TestReports:
    def test_ratio_checks(self):
        check = RatioCheck.at_least('x', 2.0, 1.5)
        assert check.passed
        assert check.slack == pytest.approx(0.5)
        assert not RatioCheck.at_most('y', 2.0, 1.5).passed

    def test_digest_is_hex_sha3(self):
        digest = instance_digest(crossed_instance())
        assert len(digest) == 64
        int(digest, 16)


class TestSolvePipelines:
    def test_unweighted_nsw(self):
        report = run_solve_nsw(crossed_instance(), EPS, seed=0)
        assert report.passed
        assert report.rounded_value == pytest.approx(3.0)
        assert report.fsr_gap is not None
        assert {c.name for c in report.checks} >= {'best_nsw_vs_exp_cp', 'fsr_gap_abs'}
        assert 'PASS' in report.summary()

    def test_weighted_nsw_skips_fsr(self):
        report = run_solve_nsw(generate_nsw(3, 5, 2, WeightScheme.DIRICHLET), EPS, seed=0)
        assert report.passed
        assert report.fsr_gap is None

    def test_sampled_rounding(self):
        report = run_solve_nsw(generate_nsw(2, 4, 6), EPS, seed=3, mode=RoundingMode.SAMPLE)
        assert report.rounding == 'sample'
        assert report.passed

    def test_infeasible_nsw(self):
        with pytest.raises(InfeasibleError):
            run_solve_nsw(generate_nsw(3, 2, 0), EPS, seed=0)

    def test_lp_dump(self, tmp_path):
        path = tmp_path / 'model.mps'
        run_solve_nsw(crossed_instance(), EPS, seed=0, dump_lp=path)
        assert path.read_text(encoding='utf-8').rstrip().endswith('ENDATA')

    @pytest.mark.parametrize('objective', ['l2', 'lk:3', 'completion'])
    def test_sched(self, objective):
        instance = generate_sched(4, 2, 8, SchedObjective.parse(objective))
        report = run_solve_sched(instance, EPS, seed=0)
        assert report.passed
        assert report.objective == instance.objective.label
        assert report.rounded_value <= report.expected_value * (1.0 + 1e-9) + 1e-9


class TestVerify:
    def test_alpha_suite(self):
        report = run_verify(Suite.ALPHA)
        assert report.passed
        assert report.extra['alpha_2'] == pytest.approx(4.0 / 3.0, abs=1e-4)

    def test_nsw_suite(self):
        report = run_verify(Suite.NSW, count=2, eps=EPS, seed=1)
        assert report.instances == 2
        assert report.passed, report.summary()

    def test_fsr_suite_on_a_file(self, tmp_path):
        path = tmp_path / 'crossed.json'
        path.write_text(instance_to_json(crossed_instance()), encoding='utf-8')
        report = run_verify(Suite.FSR, input_path=path, eps=EPS)
        assert report.instances == 1
        assert report.passed, report.summary()
        assert 'max_integrality_gap_ratio' not in report.extra

    def test_fsr_suite_reports_gap_ratios_per_agent_count(self):
        report = run_verify(Suite.FSR, count=1, eps=0.05, seed=3)
        assert report.passed, report.summary()
        for n in (2, 3, 4, 5, 8):
            assert 1.0 - 1e-9 <= report.extra[f"max_integrality_gap_ratio_n{n}"] <= math.exp(1.0 / math.e) * 1.05 + 1e-9
        assert report.extra['max_integrality_gap_ratio_n8'] >= 1.4
        assert report.extra['max_integrality_gap_ratio'] >= report.extra['max_integrality_gap_ratio_n5']

    def test_ef1_suite(self):
        report = run_verify(Suite.EF1, count=3, seed=2)
        assert report.passed, report.summary()
        assert 1.0 <= report.extra['max_ef1_ratio'] <= math.exp(1.0 / math.e) + 1e-9

    def test_sched_suite(self):
        report = run_verify(Suite.SCHED, count=2, eps=EPS, seed=4)
        assert report.instances == 4
        assert report.passed, report.summary()
