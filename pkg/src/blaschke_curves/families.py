"""Degree-5 families whose interior curve splits into two ellipses.

``B_{a,b}(z) = z (z^2 - a)(z^2 - b) / ((1 - a z^2)(1 - b z^2))`` on the curve
``a^3 b^3 - 2a^2 b^2 - (a^2 + b^2) + 3ab = 0`` and
``B_c(z) = z ((z - 1/4)/(1 - z/4))^2 ((z - c)/(1 - cz))^2`` with
``c^3 - 72c^2 + 48c - 4 = 0``. The checks here sample both curves and test
them against the factored equations.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .core import make_canonical
from .errors import DomainError
from .exterior import exterior_samples
from .interior import envelope_samples
from .sympoly import BivarPoly, RealPoly2, conic_classify, to_real_form

log = logging.getLogger(__name__)

__all__ = [
    'FamilyABParams', 'FamilyCParams', 'family_ab', 'family_c',
    'ab_constraint', 'c_cubic', 'refine_b', 'refine_c',
    'ab_exterior_factors', 'ab_interior_factors', 'c_exterior_factors',
    'family_ab_exterior_check', 'family_ab_interior_check',
    'family_c_checks', 'fit_conic', 'ellipse_foci', 'fit_circle', 'Report',
    'ROUNDED_AB', 'APPROX_C',
]

ROUNDED_AB = (0.16, 0.0616)
APPROX_C = (0.0976036, 0.5745591)


@dataclass
class Report:
    """Outcome of a family check; ``details`` is JSON-serializable."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {'name': self.name, 'pass': bool(self.passed), **self.details}


def ab_constraint(a, b):
    return a ** 3 * b ** 3 - 2 * a ** 2 * b ** 2 - (a ** 2 + b ** 2) + 3 * a * b


def c_cubic(c):
    return c ** 3 - 72 * c ** 2 + 48 * c - 4


@dataclass(frozen=True)
class FamilyABParams:
    a: float
    b: float

    def __post_init__(self):
        for name in ('a', 'b'):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise DomainError(f'{name} = {v} must lie in (0, 1)')

    @property
    def constraint_residual(self):
        return ab_constraint(self.a, self.b)


@dataclass(frozen=True)
class FamilyCParams:
    c: float

    def __post_init__(self):
        if not 0 < self.c < 1:
            raise DomainError(f'c = {self.c} must lie in (0, 1)')

    @property
    def cubic_residual(self):
        return c_cubic(self.c)


def family_ab(a, b):
    """Canonical product with zeros ``+-sqrt(a)``, ``+-sqrt(b)``."""
    FamilyABParams(a, b)
    ra, rb = np.sqrt(a), np.sqrt(b)
    return make_canonical([ra, -ra, rb, -rb])


def family_c(c):
    """Canonical product with double zeros at ``1/4`` and ``c``."""
    FamilyCParams(c)
    return make_canonical([0.25, 0.25, c, c])


def refine_b(a, b_guess, xtol=1e-16):
    """Bisect the constraint in ``b`` on ``[b_guess/2, 3 b_guess/2]``."""
    return bisect(lambda b: ab_constraint(a, b), 0.5 * b_guess, 1.5 * b_guess,
                  xtol=xtol, maxiter=200)


def refine_c(c_guess, xtol=1e-16):
    """Bisect the cubic on ``[0.95 c_guess, 1.05 c_guess]``."""
    return bisect(c_cubic, 0.95 * c_guess, 1.05 * c_guess, xtol=xtol, maxiter=200)


def ab_exterior_factors(a, b):
    """The two real quadratic factors of the exterior curve of ``B_{a,b}``."""
    g = a * a * b ** 3 - a * b * b
    f1 = RealPoly2({(2, 0): a * (b + 1) ** 2, (0, 2): a * (b - 1) ** 2, (0, 0): -4 * b})
    f2 = RealPoly2({(2, 0): g + 2 * b * b + 3 * b - a,
                    (0, 2): g - 2 * b * b + 3 * b - a, (0, 0): -4 * b})
    return f1, f2


def ab_interior_factors(a, b):
    """The two ellipses of the interior curve, foci ``+-sqrt(a)``, ``+-sqrt(b)``."""
    e1 = RealPoly2({(2, 0): 4 * b / (a * (b + 1) ** 2),
                    (0, 2): 4 * b / (a * (b - 1) ** 2), (0, 0): -1.0})
    e2 = RealPoly2({(2, 0): 4 * a / (b * (a + 1) ** 2),
                    (0, 2): 4 * a / (b * (a - 1) ** 2), (0, 0): -1.0})
    return e1, e2


def c_exterior_factors(c):
    """The two factors of the exterior curve of ``B_c`` in ``(z, conj z)``."""
    f1 = BivarPoly({(2, 0): 4, (1, 1): 8 - 225 * c, (1, 0): -64,
                    (0, 2): 4, (0, 1): -64, (0, 0): 256})
    f2 = BivarPoly({(2, 0): 16 * c * c, (1, 1): -257 * c * c + 272 * c - 64,
                    (1, 0): -64 * c, (0, 2): 16 * c * c, (0, 1): -64 * c,
                    (0, 0): 64})
    return f1, f2


def _assign(res1, res2, tol):
    """Per-sample factor assignment by smaller residual."""
    best = np.minimum(res1, res2)
    return {
        'max_residual': float(best.max()) if best.size else 0.0,
        'n_samples': int(best.size),
        'n_neither': int((best >= tol).sum()),
        'n_both': int(((res1 < tol) & (res2 < tol)).sum()),
        'n_first': int((res1 <= res2).sum()),
        'n_second': int((res1 > res2).sum()),
    }, res1 <= res2


def family_ab_exterior_check(a, b, thetas, tol):
    """Every finite exterior sample must annihilate one of the two factors."""
    params = FamilyABParams(a, b)
    if abs(params.constraint_residual) > 1e-3:
        log.warning('constraint residual %.3e: (a, b) is off the family',
                    params.constraint_residual)
    pts = exterior_samples(family_ab(a, b), thetas).finite_points()
    f1, f2 = ab_exterior_factors(a, b)
    x, y = pts.real, pts.imag
    stats, _ = _assign(f1.normalized_residual(x, y), f2.normalized_residual(x, y), tol)
    kinds = [conic_classify(f1), conic_classify(f2)]
    passed = stats['n_neither'] == 0
    return Report('family_ab_exterior', passed, {
        'a': a, 'b': b, 'constraint_residual': params.constraint_residual,
        'tol': tol, 'factor_types': kinds, **stats})


def fit_conic(x, y):
    """Least-squares conic through points (smallest singular vector)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    scale = np.abs(design).max(axis=0)
    _, _, vt = np.linalg.svd(design / scale, full_matrices=False)
    A, B, C, D, E, F = vt[-1] / scale
    return RealPoly2({(2, 0): A, (1, 1): B, (0, 2): C,
                      (1, 0): D, (0, 1): E, (0, 0): F})


def ellipse_foci(Q):
    """Foci of a real ellipse given as a quadratic ``RealPoly2``."""
    M = np.array([[Q[(2, 0)], Q[(1, 1)] / 2], [Q[(1, 1)] / 2, Q[(0, 2)]]])
    lin = np.array([Q[(1, 0)], Q[(0, 1)]])
    center = np.linalg.solve(M, -lin / 2)
    k = Q(center[0], center[1])
    evals, evecs = np.linalg.eigh(M)
    axes2 = -k / evals
    if np.any(axes2 <= 0):
        raise ValueError('conic is not a real ellipse')
    major = int(np.argmax(axes2))
    half = np.sqrt(axes2.max() - axes2.min())
    v = evecs[:, major]
    c = complex(center[0], center[1])
    off = complex(v[0], v[1]) * half
    return c - off, c + off


def fit_circle(z):
    """Algebraic least-squares circle; returns ``(center, radius)``."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    design = np.column_stack([x, y, np.ones_like(x)])
    (D, E, F), *_ = np.linalg.lstsq(design, -(x * x + y * y), rcond=None)
    center = complex(-D / 2, -E / 2)
    return center, float(np.sqrt(abs(center) ** 2 - F))


def _foci_error(found, expected):
    found = sorted(found, key=lambda w: (round(w.real, 6), w.imag))
    expected = sorted(expected, key=lambda w: (round(w.real, 6), w.imag))
    return max(abs(f - e) for f, e in zip(found, expected))


def family_ab_interior_check(a, b, thetas, tol, foci_tol=1e-3):
    """Interior samples lie on the two ellipses; fitted foci match."""
    FamilyABParams(a, b)
    pts = envelope_samples(family_ab(a, b), thetas).finite_points()
    e1, e2 = ab_interior_factors(a, b)
    x, y = pts.real, pts.imag
    r1, r2 = np.abs(e1(x, y)), np.abs(e2(x, y))
    stats, first = _assign(r1, r2, tol)
    ra, rb = np.sqrt(a), np.sqrt(b)
    foci = {}
    errs = []
    for label, mask, expect in (('a', first, (ra, -ra)), ('b', ~first, (rb, -rb))):
        if mask.sum() < 6:
            foci[label] = None
            errs.append(np.inf)
            continue
        fitted = ellipse_foci(fit_conic(x[mask], y[mask]))
        foci[label] = [[f.real, f.imag] for f in fitted]
        errs.append(_foci_error(fitted, [complex(e) for e in expect]))
    passed = stats['n_neither'] == 0 and max(errs) < foci_tol
    return Report('family_ab_interior', passed, {
        'a': a, 'b': b, 'tol': tol, 'foci_tol': foci_tol,
        'fitted_foci': foci, 'foci_error': [float(e) for e in errs], **stats})


def family_c_checks(c, thetas, tol, circle_fit_tol=1e-5):
    """Exterior factorization, factor types and the two interior circles.

    The second circle's radius is written ``(17c - 8)/8`` in the source
    formula, which is negative for the small root; the check uses the
    absolute value and reports which reading the fitted radius supports.
    """
    params = FamilyCParams(c)
    B = family_c(c)
    f1, f2 = c_exterior_factors(c)
    ext = exterior_samples(B, thetas).finite_points()
    ext_stats, _ = _assign(f1.normalized_residual(ext), f2.normalized_residual(ext), tol)
    kinds = [conic_classify(to_real_form(f1)), conic_classify(to_real_form(f2))]
    small_root = c < 0.3
    expected_kinds = ['ellipse', 'ellipse'] if small_root else ['ellipse', 'hyperbola']

    inner = envelope_samples(B, thetas).finite_points()
    r_first = 15 / 16 * np.sqrt(c)
    r_second_signed = (17 * c - 8) / 8
    r_second = abs(r_second_signed)
    d1 = np.abs(np.abs(inner - 0.25) - r_first)
    d2 = np.abs(np.abs(inner - c) - r_second)
    int_stats, first = _assign(d1, d2, tol)
    c1, rad1 = fit_circle(inner[first])
    c2, rad2 = fit_circle(inner[~first])
    fit_err = max(abs(c1 - 0.25), abs(rad1 - r_first))
    reading = 'signed' if abs(rad2 - r_second_signed) < circle_fit_tol else (
        'absolute' if abs(rad2 - r_second) < circle_fit_tol else 'neither')

    passed = (ext_stats['n_neither'] == 0 and sorted(kinds) == sorted(expected_kinds)
              and int_stats['n_neither'] == 0 and fit_err < circle_fit_tol)
    return Report('family_c', passed, {
        'c': c, 'cubic_residual': params.cubic_residual, 'tol': tol,
        'exterior': ext_stats, 'factor_types': kinds,
        'expected_types': expected_kinds,
        'interior': int_stats,
        'first_circle': {'center': [c1.real, c1.imag], 'radius': rad1,
                         'expected_radius': r_first, 'fit_error': fit_err},
        'second_circle': {'center': [c2.real, c2.imag], 'radius': rad2,
                          'formula_signed': r_second_signed,
                          'formula_abs': r_second, 'reading': reading},
    })
