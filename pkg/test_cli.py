"""Tests for the pareto-smooth command line."""

import json

import pytest
from click.testing import CliRunner

import cli as cli_module
from cli import cli
from src.checks import PropertyCheck

GRAPH = {
    'vertices': [{'id': 's', 'as': 1}, {'id': 'a', 'as': 1}, {'id': 'b', 'as': 2},
                 {'id': 'c', 'as': 2}, {'id': 'd', 'as': 3}, {'id': 't', 'as': 3}],
    'edges': [{'u': 's', 'v': 'a'}, {'u': 'a', 'v': 'b'}, {'u': 'a', 'v': 'c'},
              {'u': 'b', 'v': 'c'}, {'u': 'c', 'v': 'd'}, {'u': 'b', 'v': 'd'},
              {'u': 'd', 'v': 't'}],
    's': 's',
    't': 't',
}


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(cli, args, obj={})


@pytest.fixture
def instance_file(runner, tmp_path):
    path = tmp_path / "instance.json"
    result = invoke(runner, ['--seed', '3', '--out', str(path), 'generate', '--family', 'hypercube',
                             '-n', '6', '-d', '1'])
    assert result.exit_code == 0, result.output
    return path


def test_generate_writes_a_reproducible_instance(runner, tmp_path, instance_file):
    data = json.loads(instance_file.read_text())
    assert data['metadata']['seed'] == 3
    assert data['partition'] is None
    again = tmp_path / "again.json"
    invoke(runner, ['--seed', '3', '--out', str(again), 'generate', '--family', 'hypercube', '-n', '6', '-d', '1'])
    assert json.loads(again.read_text())['instance'] == data['instance']


def test_pareto_command(runner, instance_file):
    result = invoke(runner, ['pareto', str(instance_file)])
    assert result.exit_code == 0, result.output
    assert "PO = " in result.output
    assert "solution,V1,V2" in result.output

    result = invoke(runner, ['--format', 'json', 'pareto', str(instance_file)])
    payload = json.loads(result.output.split('\n', 1)[1])
    assert payload['count'] == len(payload['members'])


def test_witness_check_passes(runner, instance_file, tmp_path):
    summary = tmp_path / "checks.json"
    result = invoke(runner, ['--out', str(summary), 'witness-check', str(instance_file)])
    assert result.exit_code == 0, result.output
    assert "WITNESS CHECK SUMMARY" in result.output
    assert json.loads(summary.read_text())['total_violations'] == 0


def test_witness_check_on_zero_preserving_instance(runner, tmp_path):
    path = tmp_path / "zp.json"
    result = invoke(runner, ['--seed', '1', '--out', str(path), 'generate', '--family', 'zp-hypercube',
                             '-n', '6', '-d', '1'])
    assert result.exit_code == 0, result.output
    assert json.loads(path.read_text())['partition'] == [[0, 1, 2, 3, 4, 5]]
    result = invoke(runner, ['witness-check', str(path)])
    assert result.exit_code == 0, result.output
    assert "zp_reconstruction" in result.output


def test_witness_check_violation_exits_with_2(runner, instance_file, monkeypatch):
    class Broken(PropertyCheck):
        def __init__(self):
            super().__init__("broken")

        def check(self, context):
            return [self.violation("always broken")]

    monkeypatch.setattr(cli_module, 'default_checks', lambda zero_preserving=False: [Broken()])
    result = invoke(runner, ['witness-check', str(instance_file)])
    assert result.exit_code == 2
    assert "always broken" in result.output


def test_moments_command(runner):
    result = invoke(runner, ['--trials', '20', 'moments', '-n', '5', '--phi', '2', '-c', '2'])
    assert result.exit_code == 0, result.output
    assert "MOMENTS REPORT" in result.output


def test_sweep_writes_csv(runner, tmp_path):
    out = tmp_path / "sweep.csv"
    args = ['--trials', '10', '--seed', '2', '--out', str(out), 'sweep', '--n-values', '4,5', '--phi-values', '1,2']
    result = invoke(runner, args)
    assert result.exit_code == 0, result.output
    first = out.read_text()
    assert first.splitlines()[0].startswith('schema_version,n,phi')
    assert len(first.splitlines()) == 5
    invoke(runner, args)
    assert out.read_text() == first


def test_sweep_from_config_file(runner, tmp_path):
    config = tmp_path / "sweep.yaml"
    config.write_text("n_values: [4]\nphi_values: [1.0]\ntrials: 5\nformat: json\n")
    out = tmp_path / "sweep.json"
    result = invoke(runner, ['--config', str(config), '--out', str(out), 'sweep'])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())['cells'][0]['trials'] == 5


def test_tail_command(runner):
    result = invoke(runner, ['--trials', '10', 'tail', '--absolute', '--threshold', '1', '--threshold', '100'])
    assert result.exit_code == 0, result.output
    assert "CONCENTRATION TAIL REPORT" in result.output


def test_prob_check_command(runner, tmp_path):
    out = tmp_path / "prob.json"
    result = invoke(runner, ['--trials', '20000', '--format', 'json', '--out', str(out),
                             'prob-check', '-n', '2', '-k', '1', '--eps', '0.1'])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data['trials'] == 20000
    assert data['quasiconcave'] is True


def test_path_trade_command(runner, tmp_path):
    graph = tmp_path / "graph.json"
    graph.write_text(json.dumps(GRAPH))
    result = invoke(runner, ['--trials', '10', 'path-trade', str(graph), '--phi', '2'])
    assert result.exit_code == 0, result.output
    assert "PATH TRADING REPORT" in result.output


def test_configuration_errors_exit_with_3(runner, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("trials: 10\ncolour: red\n")
    assert invoke(runner, ['--config', str(config), 'sweep']).exit_code == 3
    assert invoke(runner, ['path-trade']).exit_code == 3
    assert invoke(runner, ['sweep', '--n-values', '4,x']).exit_code == 3


def test_other_package_errors_exit_with_1(runner, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    result = invoke(runner, ['pareto', str(broken)])
    assert result.exit_code == 1
    assert "Error" in result.output
