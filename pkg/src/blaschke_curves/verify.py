"""Property suites behind ``blaschke-curves verify``.

Each suite takes a seeded :class:`numpy.random.Generator` and returns a list
of :class:`~blaschke_curves.families.Report`. Reports flagged
``gating=False`` are informational and do not affect the exit status.
"""

import logging
import time

import numpy as np

from .core import make_canonical, preimage_fans, random_product, random_zeros
from .duality import converse_check, dual_check
from .exterior import (degeneracy_report, exterior_equation,
                       exterior_equation_closed, exterior_samples, scalar_match)
from .families import (ROUNDED_AB, APPROX_C, Report, family_ab_exterior_check,
                       family_ab_interior_check, family_c_checks, refine_b,
                       refine_c)
from .interior import (dgm_ellipse, envelope_samples, marden_envelope_report,
                       marden_points, siebeck_foci)
from .sympoly import conic_classify, to_real_form

__all__ = ['SUITES', 'run_suite', 'CONIC_EXAMPLES']

TWO_PI = 2 * np.pi

log = logging.getLogger(__name__)

# zero pairs (a1, a2) for degree 3 and the exterior conic they produce
CONIC_EXAMPLES = {
    'circle': (0.0, 0.0),
    'ellipse': (0.5, 0.3),
    'parabola': (np.sqrt(2) - 1, np.sqrt(2) - 1),
    'hyperbola': (0.8, 0.8),
}


def uniform_grid(n):
    return np.linspace(0.0, TWO_PI, n, endpoint=False)


def _timed(name, fn):
    t0 = time.perf_counter()
    passed, details = fn()
    # timings go to the log only, so reports stay byte-identical across runs
    log.info('%s: %s in %.2fs', name, 'pass' if passed else 'FAIL', time.perf_counter() - t0)
    return Report(name, bool(passed), details)


def check_preimages(rng, n_products=50, n_lambda=20, degrees=range(2, 8)):
    def run():
        worst_res = worst_circle = 0.0
        for d in degrees:
            for _ in range(n_products):
                B = random_product(rng, d)
                lams = np.exp(1j * TWO_PI * rng.random(n_lambda))
                for fan in preimage_fans(B, lams):
                    worst_res = max(worst_res, np.abs(B(fan.points) - fan.lam).max())
                    worst_circle = max(worst_circle, np.abs(np.abs(fan.points) - 1).max())
        ok = worst_res < 1e-9 and worst_circle < 1e-9
        return ok, {'max_residual': float(worst_res), 'max_off_circle': float(worst_circle)}
    return _timed('preimages', run)


def check_exterior_builder(rng, n_products=50, n_theta=20, degrees=range(2, 8)):
    def run():
        worst, degree_ok = 0.0, True
        for d in degrees:
            for _ in range(n_products):
                B = random_product(rng, d)
                P = exterior_equation(B)
                degree_ok &= P.total_degree <= d - 1
                pts = exterior_samples(B, TWO_PI * rng.random(n_theta),
                                       track=False).finite_points()
                if pts.size:
                    worst = max(worst, P.normalized_residual(pts).max())
        return worst < 1e-7 and degree_ok, {
            'max_normalized_residual': float(worst), 'degree_bound_ok': bool(degree_ok)}
    return _timed('exterior_builder', run)


def check_closed_forms(rng, n_sets=50):
    def run():
        worst = {}
        for d in (2, 3, 4, 5):
            errs = []
            for _ in range(n_sets):
                B = random_product(rng, d)
                _, err = scalar_match(exterior_equation(B),
                                      exterior_equation_closed(d, B.sigma))
                errs.append(err)
            worst[d] = float(max(errs))
        return max(worst.values()) < 1e-10, {'max_rel_error_by_degree': worst}
    return _timed('closed_forms', run)


def check_degeneracy(rng, n=20):
    def run():
        special, generic4, generic5 = [], [], []
        for _ in range(n):
            a = random_zeros(rng, 1, 0.6)[0]
            special.append(degeneracy_report(make_canonical([0, a, -a])).actual_degree)
            generic4.append(degeneracy_report(random_product(rng, 4)).actual_degree)
            generic5.append(degeneracy_report(random_product(rng, 5)).actual_degree)
        ok = max(special) <= 2 and set(generic4) == {3} and set(generic5) == {4}
        return ok, {'double_origin_degrees': sorted(set(special)),
                    'generic_d4_degrees': sorted(set(generic4)),
                    'generic_d5_degrees': sorted(set(generic5))}
    return _timed('degeneracy', run)


def check_conic_coverage(rng=None):
    def run():
        found = {}
        for expected, (a1, a2) in CONIC_EXAMPLES.items():
            P = exterior_equation(make_canonical([a1, a2]))
            found[expected] = conic_classify(to_real_form(P))
        return all(k == v for k, v in found.items()), {'classified': found}
    return _timed('conic_coverage', run)


def check_dgm(rng, n_products=50, n_lambda=64):
    def run():
        res_sum = res_imag = 0.0
        in_range = True
        ell = env_dev = 0.0
        thetas = uniform_grid(n_lambda)
        for _ in range(n_products):
            B = random_product(rng, 3)
            a1, a2 = B.zeros
            E = dgm_ellipse(a1, a2)
            fans = preimage_fans(B, np.exp(1j * thetas))
            for fan in fans:
                m = fan.residues
                res_sum = max(res_sum, abs(m.sum() - 1))
                res_imag = max(res_imag, np.abs(m.imag).max())
                in_range &= bool(np.all((m.real > 0) & (m.real < 1)))
                for _, pt in marden_points(fan):
                    ell = max(ell, abs(E.residual(pt)))
            env_dev = max(env_dev, marden_envelope_report(B, thetas)['max_dev'])
        ok = (res_sum < 1e-10 and res_imag < 1e-10 and in_range
              and ell < 1e-9 and env_dev < 1e-8)
        return ok, {'max_residue_sum_error': float(res_sum),
                    'max_residue_imag': float(res_imag),
                    'residues_in_unit_interval': in_range,
                    'max_ellipse_residual': float(ell),
                    'max_envelope_vs_division_point': float(env_dev)}
    return _timed('dgm', run)


def _match_sets(found, expected):
    found = list(found)
    err = 0.0
    for e in expected:
        i = int(np.argmin([abs(f - e) for f in found]))
        err = max(err, abs(found.pop(i) - e))
    return err


def check_siebeck(rng, n_products=50, n_lambda=5):
    def run():
        worst = 0.0
        for n in range(n_products):
            B = random_product(rng, 3 + n % 4)
            lams = np.exp(1j * TWO_PI * rng.random(n_lambda))
            for fan in preimage_fans(B, lams):
                foci = siebeck_foci(fan.points, fan.residues)
                worst = max(worst, _match_sets(foci, B.zeros))
        return worst < 1e-8, {'max_focus_error': float(worst)}
    return _timed('siebeck', run)


def check_marden_all_degrees(rng, n_products=10, n_theta=256):
    """Informational: division points versus envelope points for d >= 4."""
    def run():
        worst = {}
        for d in range(4, 8):
            devs = [marden_envelope_report(random_product(rng, d), uniform_grid(n_theta))['max_dev']
                    for _ in range(n_products)]
            worst[d] = float(max(devs))
        return True, {'max_dev_by_degree': worst, 'gating': False}
    return _timed('marden_all_degrees', run)


def check_duality(rng, n_products=20, n_theta=512, tol=1e-5):
    def run():
        rows = []
        ok = True
        thetas = uniform_grid(n_theta)
        for n in range(n_products):
            B = random_product(rng, 3 + n % 3)
            a = dual_check(B, thetas, tol)
            b = converse_check(B, thetas, tol)
            ok &= a.passed and b.passed
            rows.append({'degree': B.degree, 'dual': a.to_dict(), 'converse': b.to_dict()})
        worst = max(max(r['dual']['max_dev'], r['converse']['max_dev']) for r in rows)
        return ok, {'max_dev': worst, 'tol': tol, 'products': rows}
    return _timed('duality', run)


def check_family_ab(rng=None, n_theta=512):
    a, b_rounded = ROUNDED_AB
    b = refine_b(a, b_rounded)
    thetas = uniform_grid(n_theta)
    out = []
    ext = family_ab_exterior_check(a, b, thetas, 1e-7)
    inner = family_ab_interior_check(a, b, thetas, 1e-7, foci_tol=1e-3)
    kinds_ok = ext.details['factor_types'] == ['ellipse', 'ellipse']
    out.append(Report('family_ab_refined', ext.passed and inner.passed and kinds_ok,
                      {'exterior': ext.to_dict(), 'interior': inner.to_dict()}))
    ext_r = family_ab_exterior_check(a, b_rounded, thetas, 5e-4)
    inner_r = family_ab_interior_check(a, b_rounded, thetas, 5e-4, foci_tol=5e-4)
    out.append(Report('family_ab_rounded', True, {
        'gating': False,
        'exterior_pass': ext_r.passed, 'exterior_max_residual': ext_r.details['max_residual'],
        'foci_error': inner_r.details['foci_error'],
        'note': 'rounded parameters miss the family constraint; reported, not gated'}))
    return out


def check_family_c(rng=None, n_theta=512):
    out = []
    for guess in APPROX_C:
        c = refine_c(guess)
        rep = family_c_checks(c, uniform_grid(n_theta), 1e-7)
        rep.name = f'family_c[{guess}]'
        out.append(rep)
    return out


SUITES = {
    'core': [check_preimages, check_exterior_builder, check_closed_forms,
             check_degeneracy, check_conic_coverage],
    'dgm': [check_dgm],
    'marden': [check_siebeck, check_marden_all_degrees],
    'dual': [check_duality],
    'examples': [check_family_ab, check_family_c],
}
SUITES['all'] = [fn for name in ('core', 'dgm', 'marden', 'dual', 'examples')
                 for fn in SUITES[name]]


def run_suite(name, seed=7, duality_tol=None):
    """Run a named suite; returns ``(all_passed, report_dict)``."""
    if name not in SUITES:
        raise KeyError(f'unknown suite {name!r}; choose from {sorted(SUITES)}')
    rng = np.random.default_rng(seed)
    reports = []
    for fn in SUITES[name]:
        if fn is check_duality and duality_tol is not None:
            result = fn(rng, tol=duality_tol)
        else:
            result = fn(rng)
        reports.extend(result if isinstance(result, list) else [result])
    gating = [r for r in reports if r.details.get('gating', True)]
    passed = all(r.passed for r in gating)
    return passed, {
        'suite': name, 'seed': seed, 'rng': 'numpy.random.PCG64',
        'pass': passed, 'checks': [r.to_dict() for r in reports],
    }
