"""Tests for the command line front door
"""
import io
import json

import pytest

from linkedgrass.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main

TRIANGLE = {'graph': {'vertices': 3, 'edges': [[0, 1], [0, 2], [1, 2]]},
            'w0': [1, 1, 1], 'concentrated': [[3, 0, 0], [0, 3, 0], [0, 0, 3]]}


@pytest.fixture()
def document(tmp_path):
    def write(content, name='document.json'):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(path)
    return write


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, json.loads(out.getvalue()) if out.getvalue() else None


def test_counterexample():
    code, report = run('counterexample')
    assert code == EXIT_OK
    assert report['command'] == 'counterexample'
    assert report['result']['point']['linked_condition'] is False
    assert report['result']['linked_point']['linked_condition'] is True
    assert report['provenance']['p'] == 2


@pytest.mark.parametrize('seed', ['0', '4'])
def test_counterexample_control_point_is_generic(seed):
    code, report = run('--seed', seed, 'counterexample')
    assert code == EXIT_OK
    control = report['result']['linked_point']
    assert control['linked_condition'] is True
    assert control['minors_vanish'] is True


def test_analyze(document):
    path = document({'kind': 'exponents', 'p': 2, 'exponents': [[0, 0, 0, 0], [-1, 0, 0, 0]]})
    code, report = run('--seed', '3', 'analyze', path, '--r', '2')
    assert code == EXIT_OK
    result = report['result']
    assert result['locally_linearly_independent']['overall']
    assert sorted(result['ambient_multiplicities'].values()) == [1, 3]
    assert len(result['strata']['2']) == 3
    assert report['provenance']['seed'] == 3
    assert len(report['provenance']['input_digest']) > 0


def test_analyze_document_without_kind(document):
    path = document({'p': 2, 'd': 4, 'exponents': [[0, 0, 0, 0], [-1, 0, 0, 0]]})
    code, report = run('analyze', path, '--r', '1')
    assert code == EXIT_OK
    assert len(report['result']['classes']) == 2
    assert sorted(report['result']['ambient_multiplicities'].values()) == [1, 3]


def test_pretty_output(document):
    path = document({'kind': 'chain', 'p': 2, 'g': [[[1, 0], [0, 0]]], 'h': [[[0, 0], [0, 1]]]})
    out = io.StringIO()
    assert main(['--pretty', 'analyze', path], stdout=out) == EXIT_OK
    assert out.getvalue().startswith('{\n  ')


def test_malformed_document(document):
    code, report = run('analyze', document('{"kind": "exponents", "p": }'))
    assert code == EXIT_USAGE
    assert report is None


def test_non_convex_configuration_needs_close(document):
    path = document({'kind': 'exponents', 'p': 2, 'exponents': [[0, 0], [2, 0]]})
    assert run('analyze', path)[0] == EXIT_USAGE
    code, report = run('analyze', path, '--close')
    assert code == EXIT_OK
    assert len(report['result']['classes']) == 3


def test_bruteforce_budget(document):
    path = document({'kind': 'exponents', 'p': 2, 'exponents': [[0, 0, 0, 0], [-1, 0, 0, 0]]})
    assert run('--budget', '10', 'bruteforce', path, '--r', '1')[0] == EXIT_BUDGET
    code, report = run('bruteforce', path, '--r', '1')
    assert code == EXIT_OK
    assert report['result']['agreement']
    assert report['result']['ranks']['1']['points'] == 29


@pytest.mark.parametrize('flag', ['--oracle', '--q'])
def test_bruteforce_oracle_field(document, flag):
    path = document({'kind': 'exponents', 'p': 2, 'exponents': [[0, 0, 0, 0], [-1, 0, 0, 0]]})
    code, report = run('bruteforce', path, '--r', '1', flag, '3')
    assert code == EXIT_OK
    assert report['result']['agreement']
    assert report['result']['ranks']['1']['q'] == 3


def test_strata_with_witnesses_and_oracle(document):
    path = document({'kind': 'exponents', 'p': 2, 'exponents': [[0, 0, 0, 0], [-1, 0, 0, 0]]})
    code, report = run('strata', path, '--r', '1', '--realize', '--oracle', '2')
    assert code == EXIT_OK
    entry = report['result']['1']
    assert len(entry['components']) == 2
    assert all(witness['projective'] for witness in entry['witnesses'])
    assert entry['oracle']['components_match']


def test_tropical(document):
    code, report = run('tropical', document(TRIANGLE))
    assert code == EXIT_OK
    assert report['result']['hull_condition']
    assert len(report['result']['closure']) == 7


def test_hull(document):
    path = document({'points': [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
                     'graph': TRIANGLE['graph'], 'w0': TRIANGLE['w0']})
    code, report = run('hull', path)
    assert code == EXIT_OK
    assert len(report['result']['hull']) == 7
    assert [3, 0, 0] in report['result']['multidegrees']


def test_curve_example():
    code, report = run('curve-example', '1', '1', '1')
    assert code == EXIT_OK
    assert report['result']['expected_h0'] == 3
    assert report['provenance']['p'] == 7


def test_usage_error():
    with pytest.raises(SystemExit) as error:
        main([])
    assert error.value.code == EXIT_USAGE
