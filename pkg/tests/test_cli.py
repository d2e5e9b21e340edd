import json
import subprocess
import sys

import pytest

from drinfeld.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_partition_count(capsys):
    assert run(capsys, 'partitions', '--r', '2', '--n', '4', '--count-only') == (0, '5\n')


def test_json_has_schema_and_config(capsys):
    code, out = run(capsys, 'partitions', '--r', '3', '--n', '3', '--format', 'json')
    data = json.loads(out)
    assert code == 0 and data['schema'] == 1 and data['command'] == 'partitions'
    assert data['config']['r'] == 3 and data['count'] == 4
    assert data['partitions'][1] == [[0], [1], []]


def test_json_output_is_deterministic(capsys):
    argv = ('exp-coeffs', '--q', '3', '--A', 'T', '--B', '1', '--n', '3', '--mode', 'both', '--format', 'json')
    assert run(capsys, *argv) == run(capsys, *argv)


def test_symbolic_coefficients(capsys):
    code, out = run(capsys, 'log-coeffs', '--q', '2', '--rank', '2', '--n', '2')
    assert code == 0 and 'A1' in out and 'A2' in out


def test_valuations_report(capsys):
    code, out = run(capsys, 'valuations', '--q', '3', '--A', 'T+1', '--B', '1/T^2', '--format', 'json')
    data = json.loads(out)
    assert code == 0 and data['schema'] == 1


def test_periods_without_second_generator_exits_one(capsys):
    code, out = run(capsys, 'periods', '--q', '3', '--A', 'T^3+1', '--B', '1', '--precision', '60')
    assert code == 1 and 'out of method scope' in out


def test_supersingular_scan(capsys):
    code, out = run(capsys, 'supersingular', '--q', '2', '--degree', '2', '--scan', '--all-j',
                    '--method', 'both', '--format', 'json')
    rows = json.loads(out)['rows']
    assert code == 0 and all(r['agree'] for r in rows)
    assert [r['j'] for r in rows if r['supersingular']] == ['1']


def test_multinomial_both(capsys):
    code, out = run(capsys, 'multinomial', '--q', '2', '--A', '1', '--B', 'T', '--m', '2', '--mode', 'both')
    assert code == 0 and 'c(4;2) = T^5' in out


@pytest.mark.parametrize('argv', [
    ('partitions', '--r', '0', '--n', '3'),
    ('exp-coeffs', '--q', '6', '--n', '2'),
    ('exp-coeffs', '--q', '4', '--p', '3', '--n', '2'),
    ('valuations', '--q', '3', '--A', 'T+', '--B', '1'),
])
def test_bad_input_exits_with_error(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code != 0


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(['partitions', '--r', 'x', '--n', '3'])
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, '-m', 'drinfeld', 'partitions', '--r', '3', '--n', '5', '--count-only'],
                         capture_output=True, text=True, check=True).stdout
    assert out.strip() == '13'
