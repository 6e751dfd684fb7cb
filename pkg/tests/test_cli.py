import json
import sys

import pytest
from typer.testing import CliRunner

from nashcp.commands import instance_to_json
from nashcp.main import EXIT_INFEASIBLE, EXIT_INPUT, app, run
from tests.builders import crossed_instance


class TestCli:
    def setup_method(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(app, list(args))

    def crossed_file(self, tmp_path):
        path = tmp_path / 'crossed.json'
        path.write_text(instance_to_json(crossed_instance()), encoding='utf-8')
        return path

    def test_gen_is_reproducible(self, tmp_path):
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'
        for path in (first, second):
            result = self.invoke('gen', '--kind', 'nsw', '--n', '3', '--m', '5', '--seed', '7', '--output', str(path))
            assert result.exit_code == 0
        assert first.read_bytes() == second.read_bytes()
        data = json.loads(first.read_text(encoding='utf-8'))
        assert [a['id'] for a in data['agents']] == ['a1', 'a2', 'a3']

    def test_gen_sched_and_gap(self, tmp_path):
        sched = tmp_path / 'sched.json'
        result = self.invoke('gen', '--kind', 'sched', '--n', '4', '--m', '2', '--objective', 'completion', '--output', str(sched))
        assert result.exit_code == 0
        data = json.loads(sched.read_text(encoding='utf-8'))
        assert data['objective'] == {'kind': 'completion'}
        assert len(data['p']) == 2 and len(data['p'][0]) == 4

        gap = tmp_path / 'gap.json'
        assert self.invoke('gen', '--kind', 'gap', '--n', '3', '--big', '8', '--output', str(gap)).exit_code == 0
        assert len(json.loads(gap.read_text(encoding='utf-8'))['items']) == 3

    def test_solve_nsw(self, tmp_path):
        result = self.invoke('solve-nsw', '--input', str(self.crossed_file(tmp_path)), '--eps', '0.01')
        assert result.exit_code == 0, result.output
        assert '"cp_value"' in result.output
        assert 'checks=PASS' in result.output

    def test_solve_nsw_dumps_the_lp(self, tmp_path):
        dump = tmp_path / 'cp.mps'
        result = self.invoke('solve-nsw', '--input', str(self.crossed_file(tmp_path)), '--eps', '0.01', '--dump-lp', str(dump))
        assert result.exit_code == 0
        assert 'ENDATA' in dump.read_text(encoding='utf-8')

    def test_malformed_file(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"agents": [', encoding='utf-8')
        result = self.invoke('solve-nsw', '--input', str(path))
        assert result.exit_code == EXIT_INPUT
        assert 'line' in result.output

    def test_non_positive_eps(self, tmp_path):
        result = self.invoke('solve-nsw', '--input', str(self.crossed_file(tmp_path)), '--eps', '0')
        assert result.exit_code == EXIT_INPUT

    def test_more_agents_than_items(self, tmp_path):
        path = tmp_path / 'tight.json'
        assert self.invoke('gen', '--kind', 'nsw', '--n', '3', '--m', '2', '--output', str(path)).exit_code == 0
        result = self.invoke('solve-nsw', '--input', str(path), '--eps', '0.01')
        assert result.exit_code == EXIT_INFEASIBLE
        assert 'infeasible' in result.output

    @pytest.mark.parametrize('objective', ['l2', 'completion'])
    def test_solve_sched(self, tmp_path, objective):
        path = tmp_path / 'sched.json'
        assert self.invoke('gen', '--kind', 'sched', '--n', '4', '--m', '2', '--seed', '3', '--output', str(path)).exit_code == 0
        result = self.invoke('solve-sched', '--input', str(path), '--objective', objective, '--eps', '0.01')
        assert result.exit_code == 0, result.output
        assert f"[{'lk:2' if objective == 'l2' else 'completion'}]" in result.output

    def test_unknown_objective(self, tmp_path):
        path = tmp_path / 'sched.json'
        assert self.invoke('gen', '--kind', 'sched', '--n', '2', '--m', '2', '--output', str(path)).exit_code == 0
        assert self.invoke('solve-sched', '--input', str(path), '--objective', 'l0').exit_code == EXIT_INPUT

    def test_verify_alpha(self):
        result = self.invoke('verify', '--suite', 'alpha')
        assert result.exit_code == 0
        assert 'suite alpha: PASS' in result.output

    def test_unknown_backend(self, tmp_path):
        result = self.invoke('solve-nsw', '--input', str(self.crossed_file(tmp_path)), '--backend', 'cplex')
        assert result.exit_code == EXIT_INPUT


class TestEntryPoint:
    def test_usage_errors_exit_with_input_code(self, monkeypatch):
        monkeypatch.setattr(sys, 'argv', ['nashcp', 'solve-nsw'])
        with pytest.raises(SystemExit) as info:
            run()
        assert info.value.code == EXIT_INPUT

    @pytest.mark.parametrize('argv', [
        ['nashcp', 'solve-nsw', '--no-such-flag'],
        ['nashcp', 'gen', '--kind', 'tree'],
        ['nashcp', 'no-such-command'],
    ])
    def test_other_usage_errors_exit_with_input_code(self, monkeypatch, argv):
        monkeypatch.setattr(sys, 'argv', argv)
        with pytest.raises(SystemExit) as info:
            run()
        assert info.value.code == EXIT_INPUT

    def test_success_exits_zero(self, monkeypatch, tmp_path):
        path = tmp_path / 'gen.json'
        monkeypatch.setattr(sys, 'argv', ['nashcp', 'gen', '--kind', 'nsw', '--n', '2', '--m', '3', '--output', str(path)])
        with pytest.raises(SystemExit) as info:
            run()
        assert info.value.code == 0
        assert path.exists()
