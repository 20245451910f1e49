import json
import pytest

import cover_genus
from src.data_loader import load_system, save_system
from src.fixtures import power


def _run(capsys, *argv):
    code = cover_genus.main(list(argv))
    return code, capsys.readouterr()


def _pair_files(tmp_path, capsys, name):
    p_path, w_path = tmp_path / 'P.json', tmp_path / 'W.json'
    code, _ = _run(capsys, 'fixture', name, '--out', str(p_path), '--out-w', str(w_path))
    assert code == 0
    return p_path, w_path


def test_fixture_writes_a_loadable_system(tmp_path, capsys):
    path = tmp_path / 'z3.json'
    code, _ = _run(capsys, 'fixture', 'power', '--param', 'n=3', '--out', str(path))
    assert code == 0
    assert load_system(path) == power(3)


def test_fixture_pair_to_stdout(capsys):
    code, captured = _run(capsys, 'fixture', 'dur')
    assert code == 0
    document = json.loads(captured.out)
    assert set(document) == {'P', 'W'}


def test_bad_fixture_parameter_exits_with_2(capsys):
    code, captured = _run(capsys, 'fixture', 'power', '--param', 'm=3')
    assert code == 2
    assert 'UnknownFixture' in captured.err


def test_decompose_json(tmp_path, capsys):
    path = tmp_path / 'z2.json'
    save_system(power(2), path)
    code, captured = _run(capsys, 'decompose', '--p', str(path), '--w', str(path), '--format', 'json')
    assert code == 0
    document = json.loads(captured.out)
    assert document['n_components'] == 2
    assert document['chi_total'] == 4
    assert [c['orbit_key'] for c in document['components']] == [1, 2]


def test_decompose_text_output_is_a_table(tmp_path, capsys):
    path = tmp_path / 'z3.json'
    save_system(power(3), path)
    code, captured = _run(capsys, 'decompose', '--p', str(path), '--w', str(path))
    assert code == 0
    assert 'genus' in captured.out


@pytest.mark.parametrize("name", ['cubic_over_hyperelliptic', 'quadratic_over_tame_quartic', 'tame_quartic_self', 'dur'])
def test_verify_pinned_pairs_exit_zero(tmp_path, capsys, name):
    p_path, w_path = _pair_files(tmp_path, capsys, name)
    out = tmp_path / 'report.json'
    code, _ = _run(capsys, 'verify', '--p', str(p_path), '--w', str(w_path), '--format', 'json', '--out', str(out))
    assert code == 0
    document = json.loads(out.read_text(encoding='utf-8'))
    assert document['all_hold']
    assert any(c['name'] == 'theorem1' for c in document['checks'])


def test_verify_output_is_byte_stable(tmp_path, capsys):
    p_path, w_path = _pair_files(tmp_path, capsys, 'cubic_over_hyperelliptic')
    outputs = []
    for _ in range(2):
        _, captured = _run(capsys, 'verify', '--p', str(p_path), '--w', str(w_path), '--format', 'json')
        outputs.append(captured.out)
    assert outputs[0] == outputs[1]


def test_self_product(tmp_path, capsys):
    path = tmp_path / 'z3.json'
    save_system(power(3), path)
    code, captured = _run(capsys, 'self-product', '--v', str(path), '--k', '2', '--format', 'json')
    assert code == 0
    document = json.loads(captured.out)
    assert document['k'] == 2
    assert [c['size'] for c in document['components']] == [3, 3]


def test_normalize(tmp_path, capsys):
    path = tmp_path / 't3.json'
    _run(capsys, 'fixture', 'chebyshev', '--param', 'n=3', '--out', str(path))
    code, captured = _run(capsys, 'normalize', '--v', str(path), '--format', 'json')
    assert code == 0
    document = json.loads(captured.out)
    assert document['mon_order'] == 6
    assert document['orbifold_chi'] == '1/3'
    assert not document['is_galois']


def test_normalize_reports_cap_overflow(tmp_path, capsys):
    path = tmp_path / 'quartic.json'
    _run(capsys, 'fixture', 'tame_quartic', '--out', str(path))
    code, captured = _run(capsys, 'normalize', '--v', str(path), '--group-order-cap', '10')
    assert code == 2
    assert 'OrderExceedsCap' in captured.err


def test_tame(tmp_path, capsys):
    path = tmp_path / 'quartic.json'
    _run(capsys, 'fixture', 'tame_quartic', '--out', str(path))
    code, captured = _run(capsys, 'tame', '--a', str(path), '--format', 'json')
    assert code == 0
    assert json.loads(captured.out)['tame'] is True


def test_validate(tmp_path, capsys):
    path = tmp_path / 'h2.json'
    _run(capsys, 'fixture', 'hyperelliptic', '--param', 'g=2', '--out', str(path))
    code, captured = _run(capsys, 'validate', '--v', str(path), '--format', 'json')
    assert code == 0
    document = json.loads(captured.out)
    assert document['genus'] == 2
    assert document['valid']


def test_invalid_input_exits_with_2(tmp_path, capsys):
    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps({'degree': 2, 'branch_points': [{'label': 'a', 'perm': [[1, 2]]}]}), encoding='utf-8')
    # a lone transposition over the sphere breaks the relation
    code, captured = _run(capsys, 'validate', '--v', str(bad))
    assert code == 2
    assert captured.err.startswith('error:')

    code, _ = _run(capsys, 'validate', '--v', str(tmp_path / 'missing.json'))
    assert code == 2


def test_fuzz_command(tmp_path, capsys):
    config = tmp_path / 'fuzz.yaml'
    config.write_text('seed: 1\ntrials: 3\nmax_degree: 3\n', encoding='utf-8')
    code, captured = _run(capsys, 'fuzz', '--config', str(config), '--no-pinned', '--quiet', '--format', 'json')
    assert code == 0
    document = json.loads(captured.out)
    assert document['trials'] == 3
    assert document['pinned'] == []
    assert document['ok']


def test_text_output_goes_to_out_file(tmp_path, capsys):
    path = tmp_path / 'z3.json'
    save_system(power(3), path)
    out = tmp_path / 'nested' / 'normalize.txt'
    code, captured = _run(capsys, 'normalize', '--v', str(path), '--out', str(out))
    assert code == 0
    assert captured.out == ''
    text = out.read_text(encoding='utf-8')
    assert text
    assert not text.startswith('{')


def test_fixture_output_is_always_json(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cover_genus.main(['fixture', 'power', '--format', 'text'])
    assert excinfo.value.code == 2
