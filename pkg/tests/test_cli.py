import io
import json

import pytest

from TrapSeeker.cli import EXIT_OK, EXIT_REGRESSION, EXIT_USAGE, build_parser, dispatch


def run(argv):
    stream = io.StringIO()
    code = dispatch(argv, stream=stream)
    return code, [json.loads(line) for line in stream.getvalue().splitlines()]


def test_parser_globals():
    args = build_parser().parse_args(['--jobs', '2', 'cycles', '--hole', 'delta', '--max-period', '4'])
    assert args.jobs == 2
    assert args.max_period == 4


def test_hole(tmp_path):
    svg = tmp_path / 'p.svg'
    code, records = run(['hole', '--spec', 'p:1/2', '--svg', str(svg)])
    assert code == EXIT_OK
    assert records[0]['area'] == {'exact': '1/6', 'approx': 1 / 6}
    assert records[0]['convex']
    assert svg.read_text().count('<polygon') == 1


def test_hole_complete_trap():
    code, records = run(['hole', '--spec', 'trap:1'])
    assert code == EXIT_OK
    assert records[0]['measure']['exact'] == '1/4'
    assert run(['hole', '--spec', 'trap:x'])[0] == EXIT_USAGE


def test_forbidden_window():
    code, records = run(['forbidden', '--window', '11·00', '--hole', 'delta'])
    assert code == EXIT_OK
    assert records[0]['result'] is True
    assert run(['forbidden', '--window', '11·00'])[0] == EXIT_USAGE


def test_forbidden_family():
    code, records = run(['forbidden', '--family', 'delta'])
    assert code == EXIT_OK
    assert records[-1]['summary'] == 'delta'
    assert records[-1]['failures'] == 0
    assert records[-1]['checked'] == len(records) - 1


def test_cycles_verdict():
    code, records = run(['cycles', '--hole', 'p:1/2', '--max-period', '12', '--expect-trap'])
    assert code == EXIT_OK
    assert records[-1]['verdict'].startswith('cycle trap')
    code, records = run(['cycles', '--hole', 'pk:2', '--max-period', '6', '--expect-trap'])
    assert code == EXIT_REGRESSION
    assert records[-1]['closed_avoiders'] == ['01']


def test_dim():
    code, records = run(['dim', '--hole', 'empty', '-L', '2', '-m', '8'])
    assert code == EXIT_OK
    assert records[0]['upper'] == 2.0
    assert records[0]['lower'] == 2.0


def test_search_config_file(tmp_path):
    cfg = tmp_path / 'stage1.txt'
    cfg.write_text("anchors = 1/2,0; 1/2,1\nsymmetry = rotational\n"
                   "threshold = 13/100\nconstraints = 0,10\n")
    code, records = run(['search', '--config', str(cfg)])
    assert code == EXIT_OK
    assert records[0]['area']['exact'] == '1/12'
    assert records[-1]['count'] == 1
    assert records[-1]['constraints'] == ['C(0,10)']


def test_appendix():
    code, records = run(['appendix', '--check', 'witness', '--w', '0', '--m', '1'])
    assert code == EXIT_OK
    assert records[0]['item'] == '000100·101001'
    code, records = run(['appendix', '--check', 'balanced', '--word', '00101'])
    assert code == EXIT_OK
    assert records[0]['balanced'] and records[0]['survivor']
    assert run(['appendix', '--check', 'balanced'])[0] == EXIT_USAGE


def test_constants():
    code, records = run(['constants', '--which', 'gs'])
    assert code == EXIT_OK
    assert records[0]['rounded'] == '0.175092'
    code, records = run(['constants', '--which', 'pinfty-area'])
    assert records[0]['rounded'] == '0.12911'


@pytest.mark.parametrize("argv", [
    [],
    ['cycles', '--hole', 'delta'],
    ['cycles', '--hole', 'nonsense', '--max-period', '4'],
    ['cycles', '--hole', 'delta', '--max-period', '99'],
    ['forbidden', '--window', '1x·0', '--hole', 'delta'],
    ['constants', '--which', 'pi'],
])
def test_usage_errors(argv):
    assert run(argv)[0] == EXIT_USAGE
