"""Acceptance criteria 1 to 11 with their pinned tolerances.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import subprocess
import sys
import time

import numpy as np

from blaschke_curves.core import make_canonical, preimage_fans, random_product, random_zeros
from blaschke_curves.duality import converse_check, dual_check
from blaschke_curves.exterior import (degeneracy_report, exterior_equation,
                                      exterior_equation_closed,
                                      exterior_samples, scalar_match)
from blaschke_curves.families import (ROUNDED_AB, APPROX_C, c_cubic,
                                      family_ab_exterior_check,
                                      family_ab_interior_check,
                                      family_c_checks, refine_b, refine_c)
from blaschke_curves.interior import (dgm_ellipse, marden_envelope_report,
                                      marden_points, siebeck_foci)
from blaschke_curves.sympoly import conic_classify, to_real_form
from blaschke_curves.verify import CONIC_EXAMPLES

from conftest import record

SEED = 7
TWO_PI = 2 * np.pi


def grid(n):
    return np.linspace(0, TWO_PI, n, endpoint=False)


def random_set(seed=SEED):
    """50 random products per degree 2..7, with 20 random angles each."""
    rng = np.random.default_rng(seed)
    return [(random_product(rng, d), TWO_PI * rng.random(20))
            for d in range(2, 8) for _ in range(50)]


def test_c01_preimages():
    t0 = time.perf_counter()
    res = off = 0.0
    for B, thetas in random_set():
        for fan in preimage_fans(B, np.exp(1j * thetas)):
            res = max(res, np.abs(B(fan.points) - fan.lam).max())
            off = max(off, np.abs(np.abs(fan.points) - 1).max())
    dt = time.perf_counter() - t0
    ok = res < 1e-9 and off < 1e-9 and dt < 5
    assert record('1', ok, f'preimages: max residual {res:.1e}, max off-circle {off:.1e}, {dt:.2f}s')


def test_c02_exterior_builder():
    t0 = time.perf_counter()
    worst, degree_ok = 0.0, True
    for B, thetas in random_set():
        P = exterior_equation(B)
        degree_ok &= P.total_degree <= B.degree - 1
        pts = exterior_samples(B, thetas, track=False).finite_points()
        if pts.size:
            worst = max(worst, P.normalized_residual(pts).max())
    dt = time.perf_counter() - t0
    ok = worst < 1e-7 and degree_ok and dt < 10
    assert record('2', ok, f'exterior builder: max normalized residual {worst:.1e}, '
                           f'degree bound {degree_ok}, {dt:.2f}s')


def test_c03_closed_forms():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for d in (2, 3, 4, 5):
        for _ in range(50):
            B = random_product(rng, d)
            _, err = scalar_match(exterior_equation(B), exterior_equation_closed(d, B.sigma))
            worst = max(worst, err)
    assert record('3', worst < 1e-10, f'closed forms d=2..5: max relative error {worst:.1e}')


def test_c04_dgm():
    rng = np.random.default_rng(SEED)
    thetas = grid(64)
    s_err = imag = ell = env = 0.0
    in_range = True
    for _ in range(50):
        B = random_product(rng, 3)
        E = dgm_ellipse(*B.zeros)
        for fan in preimage_fans(B, np.exp(1j * thetas)):
            m = fan.residues
            s_err = max(s_err, abs(m.sum() - 1))
            imag = max(imag, np.abs(m.imag).max())
            in_range &= bool(np.all((m.real > 0) & (m.real < 1)))
            ell = max(ell, max(abs(E.residual(p)) for _, p in marden_points(fan)))
        env = max(env, marden_envelope_report(B, thetas)['max_dev'])
    ok = s_err < 1e-10 and imag < 1e-10 and in_range and ell < 1e-9 and env < 1e-8
    assert record('4', ok, f'degree 3: |sum m - 1| {s_err:.1e}, max Im m {imag:.1e}, m in (0,1) '
                           f'{in_range}, ellipse {ell:.1e}, envelope vs division {env:.1e}')


def test_c05_siebeck():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for n in range(50):
        B = random_product(rng, 3 + n % 4)
        for fan in preimage_fans(B, np.exp(TWO_PI * 1j * rng.random(5))):
            foci = list(siebeck_foci(fan.points, fan.residues))
            for a in B.zeros:
                i = int(np.argmin(np.abs(np.array(foci) - a)))
                worst = max(worst, abs(foci.pop(i) - a))
    assert record('5', worst < 1e-8, f'Siebeck foci vs zeros: max error {worst:.1e}')


def test_c06_duality():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    thetas = grid(512)
    worst, retained, ok = 0.0, 1.0, True
    for n in range(20):
        B = random_product(rng, 3 + n % 3)
        for rep in (dual_check(B, thetas, 1e-5), converse_check(B, thetas, 1e-5)):
            ok &= rep.max_dev < 1e-5 and rep.retained >= 0.95
            worst = max(worst, rep.max_dev)
            retained = min(retained, rep.retained)
    dt = time.perf_counter() - t0
    ok &= dt < 30
    assert record('6', ok, f'duality: max deviation {worst:.1e}, min retained '
                           f'{retained:.1%}, {dt:.2f}s')


def test_c07_degeneracy():
    rng = np.random.default_rng(SEED)
    special, g4, g5 = set(), set(), set()
    for _ in range(20):
        a = random_zeros(rng, 1, 0.6)[0]
        special.add(degeneracy_report(make_canonical([0, a, -a])).actual_degree)
        g4.add(degeneracy_report(random_product(rng, 4)).actual_degree)
        g5.add(degeneracy_report(random_product(rng, 5)).actual_degree)
    ok = max(special) <= 2 and g4 == {3} and g5 == {4}
    assert record('7', ok, f'degeneracy: {{0,a,-a}} degrees {sorted(special)}, '
                           f'generic d=4 {sorted(g4)}, d=5 {sorted(g5)}')


def test_c08a_family_ab_refined():
    a, b0 = ROUNDED_AB
    b = refine_b(a, b0)
    thetas = grid(512)
    ext = family_ab_exterior_check(a, b, thetas, 1e-7)
    inner = family_ab_interior_check(a, b, thetas, 1e-7, foci_tol=1e-3)
    kinds = ext.details['factor_types']
    foci = max(inner.details['foci_error'])
    ok = ext.passed and kinds == ['ellipse', 'ellipse'] and foci < 1e-3
    assert record('8a', ok, f'(a, b) = ({a}, {b:.15f}): exterior residual '
                            f'{ext.details["max_residual"]:.1e}, factors {kinds}, foci error {foci:.1e}')


def test_c08b_family_ab_rounded():
    a, b = ROUNDED_AB
    thetas = grid(512)
    ext = family_ab_exterior_check(a, b, thetas, 5e-4)
    inner = family_ab_interior_check(a, b, thetas, 5e-4, foci_tol=5e-4)
    kinds = ext.details['factor_types']
    foci = max(inner.details['foci_error'])
    ok = ext.passed and kinds == ['ellipse', 'ellipse'] and foci < 5e-4
    assert record('8b', ok, f'(a, b) = ({a}, {b}) rounded: exterior residual '
                            f'{ext.details["max_residual"]:.1e} (tol 5e-4), factors {kinds}, '
                            f'foci error {foci:.1e}')


def test_c09_family_c():
    thetas = grid(512)
    ok, parts = True, []
    for guess in APPROX_C:
        c = refine_c(guess)
        step = np.nextafter(c, 1) - c
        bracketed = np.sign(c_cubic(c - 1e-14)) != np.sign(c_cubic(c + 1e-14 + step))
        rep = family_c_checks(c, thetas, 1e-7, circle_fit_tol=1e-5)
        ok &= rep.passed and bool(bracketed)
        second = rep.details['second_circle']
        parts.append(f'c={c:.10f} {rep.details["factor_types"]} exterior '
                     f'{rep.details["exterior"]["max_residual"]:.1e} first-circle fit '
                     f'{rep.details["first_circle"]["fit_error"]:.1e} second radius '
                     f'{second["radius"]:.5f} vs |17c-8|/8 = {second["formula_abs"]:.5f}')
    assert record('9', ok, '; '.join(parts))


def test_c10_conic_coverage():
    found = {}
    for expected, zeros in CONIC_EXAMPLES.items():
        found[expected] = conic_classify(to_real_form(exterior_equation(make_canonical(list(zeros)))))
    ok = all(k == v for k, v in found.items()) and found['circle'] == 'circle'
    assert record('10', ok, 'conic coverage: ' + ', '.join(
        f'{k} <- {np.round(CONIC_EXAMPLES[k], 4).tolist()}: {v}' for k, v in found.items()))


def _cli(*argv):
    return subprocess.run([sys.executable, '-m', 'blaschke_curves.cli', *argv],
                          capture_output=True)


def test_c11_cli_determinism(tmp_path):
    jobs = {
        'sample.csv': ['sample', '--curve', 'exterior', '--zeros', '0.4+0.7i,0.9i,0.6,-0.9i',
                       '--n', '128'],
        'sample.json': ['sample', '--curve', 'interior', '--zeros', '0.5,0', '--n', '64'],
        'plot.svg': ['plot', '--zeros', '0.5,0.3', '--grid', '128'],
        'verify.json': ['verify', '--suite', 'dgm', '--seed', '11'],
    }
    same = True
    for name, argv in jobs.items():
        blobs = []
        for run in range(2):
            path = tmp_path / f'{run}-{name}'
            assert _cli(*argv, '--out', str(path)).returncode == 0
            blobs.append(path.read_bytes())
        same &= blobs[0] == blobs[1]
    t0 = time.perf_counter()
    proc = _cli('verify', '--suite', 'all')
    dt = time.perf_counter() - t0
    ok = same and proc.returncode == 0 and dt < 120
    assert record('11', ok, f'byte-identical outputs {same}; verify --suite all exit '
                            f'{proc.returncode} in {dt:.1f}s')
