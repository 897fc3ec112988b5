import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from blaschke_curves.cli import main
from blaschke_curves.interior import dgm_ellipse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_preimages_cube_roots(capsys):
    code, out, _ = run(capsys, 'preimages', '--zeros', '0,0', '--lambda', '1', '--json')
    assert code == 0
    doc = json.loads(out)
    pts = np.array([complex(*p) for p in doc['points']])
    assert np.allclose(pts ** 3, 1)
    assert np.allclose([complex(*m) for m in doc['residues']], 1 / 3)


def test_preimages_text(capsys):
    code, out, _ = run(capsys, 'preimages', '--zeros', '0.5', '--lambda', 'i')
    assert code == 0 and 'sum of residues: 1' in out
    doc = json.loads(run(capsys, 'preimages', '--zeros', '0.5', '--lambda', 'i', '--json')[1])
    assert len(doc['points']) == 2 and max(doc['residuals']) < 1e-9


@pytest.mark.parametrize('argv', [
    ['preimages', '--zeros', '1.5', '--lambda', '1'],
    ['preimages', '--zeros', 'x', '--lambda', '1'],
    ['preimages', '--zeros', '0.5', '--lambda', '0.5'],
    ['sample', '--curve', 'exterior', '--zeros', '0', '--n', '4'],
    ['frobnicate'],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith('error:') and err.count('\n') == 1


def test_out_of_disk_names_zero(capsys):
    _, _, err = run(capsys, 'preimages', '--zeros', '1.5', '--lambda', '1')
    assert '1.5' in err


def test_exterior_eq_forms(capsys):
    code, out, _ = run(capsys, 'exterior-eq', '--zeros', '0.5')
    assert code == 0 and out.splitlines()[0] == '-z - z̄ + 4'
    out = run(capsys, 'exterior-eq', '--zeros', '0,0', '--form', 'real')[1]
    assert out.splitlines()[0] == '-x^2 - y^2 + 4'
    out = run(capsys, 'exterior-eq', '--zeros', '0.4+0.7i,0.9i,0.6,-0.9i')[1]
    assert 'total degree 4' in out and 'closed-form match: true' in out


def test_sample_exterior_circle(capsys):
    code, out, _ = run(capsys, 'sample', '--curve', 'exterior', '--zeros', '0,0', '--n', '64')
    assert code == 0
    r = rows(out)
    assert len(r) == 192
    assert np.allclose([np.hypot(float(x['re']), float(x['im'])) for x in r], 2)


def test_sample_interior_ellipse(tmp_path, capsys):
    path = tmp_path / 'i.csv'
    assert run(capsys, 'sample', '--curve', 'interior', '--zeros', '0.5,0',
               '--n', '256', '--out', str(path))[0] == 0
    pts = np.array([complex(float(x['re']), float(x['im'])) for x in rows(path.read_text())])
    assert np.abs(dgm_ellipse(0.5, 0).residual(pts)).max() < 1e-8


def test_sample_degree_two_footer(tmp_path, capsys):
    path = tmp_path / 'd2.json'
    run(capsys, 'sample', '--curve', 'interior', '--zeros', '0', '--n', '64', '--out', str(path))
    doc = json.loads(path.read_text())
    assert {(r['j'], r['k']) for r in doc['records']} == {(1, 2)}
    assert doc['footer']['n_degenerate'] == 64


def test_unwritable_output(capsys):
    code, _, err = run(capsys, 'sample', '--curve', 'exterior', '--zeros', '0',
                       '--out', '/nonexistent/dir/x.csv')
    assert code == 2 and err.startswith('error:')


@pytest.mark.parametrize('suite', ['dgm', 'dual'])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, 'verify', '--suite', suite, '--seed', '7')
    assert code == 0 and 'overall: PASS' in out


def test_verify_failure_exits_1(capsys):
    code, out, _ = run(capsys, 'verify', '--suite', 'dual', '--tol', '1e-30')
    assert code == 1 and 'FAIL  duality' in out


def test_plot_files(tmp_path, capsys):
    path = tmp_path / 'p.svg'
    assert run(capsys, 'plot', '--zeros', '0,0', '--out', str(path),
               '--layers', 'unit_circle')[0] == 0
    assert path.read_text().count('<path') == 1
    assert run(capsys, 'plot', '--zeros', '0', '--out', str(path), '--grid', '4')[0] == 2


def test_console_script_deterministic(tmp_path):
    outs = []
    for name in ('a', 'b'):
        path = tmp_path / f'{name}.json'
        subprocess.run([sys.executable, '-m', 'blaschke_curves.cli', 'verify', '--suite',
                        'dgm', '--seed', '3', '--out', str(path)], check=True,
                       capture_output=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])['seed'] == 3
