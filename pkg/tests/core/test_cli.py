import argparse
import json

import pytest

from cmpl.cli import _height, build_parser, config_from_args, main


def test_relations_json(capsys):
    code = main(['relations', '--min-poly', 'x^2 + 1', '--phi', '0', '--json'])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report['status'] == 'SUCCESS'
    assert report['payload']['mt_dim'] == 2
    assert report['payload']['relation_lattice']['basis'] == []
    assert report['config']['command'] == 'relations'


def test_siegel_text(capsys):
    assert main(['siegel', '--g', '2']) == 0
    out = capsys.readouterr().out
    assert 'θ1θ2/π' in out
    assert 'SUCCESS' in out


def test_relations_from_file(tmp_path, capsys):
    path = tmp_path / 'types.json'
    path.write_text(json.dumps({'types': [{'min_poly': [1, 0, 1], 'phi': [0]}] * 2}))
    assert main(['relations', '--input', str(path), '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['payload']['relation_lattice']['basis'] == [['0', '1', '-1']]


@pytest.mark.parametrize('argv', [
    [],
    ['verify'],
    ['siegel', '--g', 'two'],
    ['weyl'],
    ['relations'],
    ['relations', '--min-poly', 'x^2 + 1'],
    ['verify', 'siegel-g1', '--tau0', 'i'],
    ['verify', 'beta-diag', '--disc', '-4', '--perturb', 'abc'],
])
def test_input_errors(argv, capsys):
    assert main(argv) == 3


def test_falsify_planted(capsys):
    code = main(['verify', 'falsify', '--disc', '-4', '--disc', '-3', '--planted', '--prec', '600', '--json'])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report['config']['height_bound'] == str(10 ** 8)
    assert report['certificates'][0]['relation'] == ['2', '-3', '-1']


def test_weyl_scan(capsys):
    assert main(['weyl', '--scan', '5', '2', '--json']) == 0
    payload = json.loads(capsys.readouterr().out)['payload']
    assert payload['field']['min_poly'] == [2, 0, 5, 0, 1]
    assert [d['dim'] for d in payload['special_subvarieties']] == [0, 2, 3]


def test_defaults():
    parser = build_parser()
    config = config_from_args(parser.parse_args(['verify', 'beta-diag', '--disc', '-4']))
    assert config.command == 'verify beta-diag'
    assert config.prec_bits == 1024
    assert config.height_bound == 10 ** 12
    assert config.output == 'text'
    config = config_from_args(parser.parse_args(['siegel', '--g', '3', '--height-bound', '10^20', '--json']))
    assert config.prec_bits == 256
    assert config.height_bound == 10 ** 20
    assert config.output == 'json'


def test_height():
    assert _height('10^30') == 10 ** 30
    assert _height('1e8') == 10 ** 8
    assert _height(' 12345 ') == 12345
    with pytest.raises(argparse.ArgumentTypeError):
        _height('ten')


def test_malformed_relations_file(tmp_path, capsys):
    path = tmp_path / 'relations.json'
    path.write_text(json.dumps({'basis': []}))
    assert main(['siegel', '--g', '2', '--relations', str(path)]) == 3


def test_unusable_cache_dir(tmp_path, monkeypatch, capsys):
    blocker = tmp_path / 'file'
    blocker.write_text('not a directory')
    monkeypatch.setenv('CMPL_CACHE_DIR', str(blocker / 'cache'))
    assert main(['siegel', '--g', '2']) == 0
    assert 'θ1θ2/π' in capsys.readouterr().out
