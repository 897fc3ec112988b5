"""Polynomials in ``(z, conj z)`` and their real ``(x, y)`` forms.

A :class:`BivarPoly` maps exponent pairs ``(i, j)`` to the coefficient of
``z**i * conj(z)**j``. Real curves in complex coordinates are written with
Hermitian coefficient arrays, ``c[i, j] == conj(c[j, i])``, which makes the
polynomial real on the locus ``w = conj(z)``.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .complexfmt import format_complex
from .errors import DegreeError, HermitianError

__all__ = [
    'BivarPoly', 'RealPoly2', 'PRUNE_TOL', 'evaluate_real', 'to_real_form',
    'conic_classify', 'divided_difference_coeffs',
]

PRUNE_TOL = 1e-14
HERMITIAN_TOL = 1e-12
IMAG_TOL = 1e-10


def _prune(coeffs, tol):
    if not coeffs:
        return {}
    scale = max(abs(c) for c in coeffs.values())
    return {k: c for k, c in coeffs.items() if abs(c) > tol * scale}


class BivarPoly:
    """Sparse polynomial in ``z`` and ``conj(z)`` with complex coefficients.

    Coefficients below ``PRUNE_TOL`` times the largest one are dropped at
    construction, so ``total_degree`` is well defined for builder output.
    """

    def __init__(self, coeffs=None, prune=PRUNE_TOL):
        raw = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f'negative exponent {(i, j)}')
            raw[(int(i), int(j))] = raw.get((int(i), int(j)), 0j) + complex(c)
        self.coeffs = _prune(raw, prune)

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    def __repr__(self):
        return f'BivarPoly({self})'

    def __getitem__(self, key):
        return self.coeffs.get(key, 0j)

    def __add__(self, other):
        if not isinstance(other, BivarPoly):
            other = BivarPoly.constant(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0j) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BivarPoly):
            return BivarPoly({k: c * other for k, c in self.coeffs.items()})
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0j) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    @property
    def total_degree(self):
        return max((i + j for i, j in self.coeffs), default=0)

    def ordered_terms(self):
        """Terms sorted by ``i+j`` descending, then ``i`` descending."""
        return sorted(self.coeffs.items(),
                      key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def leading_coefficient(self):
        terms = self.ordered_terms()
        return terms[0][1] if terms else 0j

    def normalized(self):
        """Scale by a positive real so the leading coefficient has modulus 1.

        A positive real factor keeps Hermitian symmetry intact.
        """
        lead = abs(self.leading_coefficient())
        if lead == 0:
            return BivarPoly()
        return self * (1.0 / lead)

    def is_hermitian(self, tol=HERMITIAN_TOL):
        scale = max((abs(c) for c in self.coeffs.values()), default=1.0)
        return all(abs(c - np.conj(self[(j, i)])) <= tol * scale
                   for (i, j), c in self.coeffs.items())

    def conj_swap(self):
        return BivarPoly({(j, i): np.conj(c) for (i, j), c in self.coeffs.items()})

    def __call__(self, z):
        """Value at ``(z, conj(z))`` (complex; use :func:`evaluate_real`)."""
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        out = np.zeros(z.shape, dtype=complex)
        for (i, j), c in self.coeffs.items():
            out = out + c * z ** i * zb ** j
        return complex(out) if out.ndim == 0 else out

    def term_scale(self, z):
        """``sum |c| |z|^(i+j)``, the natural size of the terms at ``z``."""
        r = np.abs(np.asarray(z, dtype=complex))
        out = np.zeros(r.shape)
        for (i, j), c in self.coeffs.items():
            out = out + abs(c) * r ** (i + j)
        return float(out) if out.ndim == 0 else out

    def normalized_residual(self, z):
        return np.abs(self(z)) / self.term_scale(z)

    def __str__(self):
        return _format_terms(
            [(c, _monomial(i, j)) for (i, j), c in self.ordered_terms()])


def _monomial(i, j):
    parts = []
    if i:
        parts.append('z' if i == 1 else f'z^{i}')
    if j:
        parts.append('z̄' if j == 1 else f'z̄^{j}')
    return '*'.join(parts)


def _format_terms(terms, digits=12):
    if not terms:
        return '0'
    out = []
    for n, (c, mono) in enumerate(terms):
        c = complex(c)
        if c.imag == 0:
            sign = '-' if c.real < 0 else '+'
            mag = format_complex(abs(c.real), digits)
            if mono and mag == '1':
                body = mono
            else:
                body = mag + ('*' + mono if mono else '')
        else:
            sign = '+'
            body = '(' + format_complex(c, digits) + ')' + ('*' + mono if mono else '')
        if n == 0:
            out.append(('-' if sign == '-' else '') + body)
        else:
            out.append(f' {sign} {body}')
    return ''.join(out)


@dataclass(frozen=True)
class RealPoly2:
    """Real polynomial in ``x`` and ``y``: ``{(p, q): coefficient of x^p y^q}``."""

    coeffs: dict

    def __getitem__(self, key):
        return self.coeffs.get(key, 0.0)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for (p, q), c in self.coeffs.items():
            out = out + c * x ** p * y ** q
        return float(out) if out.ndim == 0 else out

    @property
    def total_degree(self):
        return max((p + q for p, q in self.coeffs), default=0)

    def normalized_residual(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        scale = np.zeros(np.broadcast(x, y).shape)
        for (p, q), c in self.coeffs.items():
            scale = scale + abs(c) * np.abs(x) ** p * np.abs(y) ** q
        return np.abs(self(x, y)) / scale

    def __mul__(self, other):
        if isinstance(other, RealPoly2):
            out = {}
            for (p1, q1), c1 in self.coeffs.items():
                for (p2, q2), c2 in other.coeffs.items():
                    k = (p1 + p2, q1 + q2)
                    out[k] = out.get(k, 0.0) + c1 * c2
            return RealPoly2(out)
        return RealPoly2({k: c * other for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __str__(self):
        terms = sorted(self.coeffs.items(), key=lambda t: (-sum(t[0]), -t[0][0]))
        return _format_terms([(c, _xy_monomial(p, q)) for (p, q), c in terms])


def _xy_monomial(p, q):
    parts = []
    if p:
        parts.append('x' if p == 1 else f'x^{p}')
    if q:
        parts.append('y' if q == 1 else f'y^{q}')
    return '*'.join(parts)


def _require_hermitian(P):
    if not P.is_hermitian():
        raise HermitianError('polynomial is not Hermitian; it is not real '
                             'valued on conj-z = conjugate of z')


def evaluate_real(P, z):
    """Real value of a Hermitian ``P`` at ``(z, conj z)``."""
    _require_hermitian(P)
    val = P(z)
    scale = P.term_scale(z)
    bad = np.abs(np.imag(val)) > 1e-9 * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise HermitianError('imaginary residue above tolerance')
    re = np.real(val)
    return float(re) if np.ndim(re) == 0 else re


def to_real_form(P):
    """Substitute ``z = x + iy`` and expand exactly by the binomial theorem."""
    _require_hermitian(P)
    out = {}
    for (i, j), c in P.coeffs.items():
        # (x+iy)^i (x-iy)^j
        for a in range(i + 1):
            ca = comb(i, a) * 1j ** (i - a)
            for b in range(j + 1):
                cb = comb(j, b) * (-1j) ** (j - b)
                key = (a + b, (i - a) + (j - b))
                out[key] = out.get(key, 0j) + c * ca * cb
    scale = max((abs(v) for v in out.values()), default=0.0)
    for v in out.values():
        if abs(v.imag) > IMAG_TOL * max(scale, 1.0):
            raise HermitianError(f'imaginary coefficient {v.imag:.3e} left '
                                 'after substitution')
    real = {k: v.real for k, v in out.items()}
    return RealPoly2(_prune(real, PRUNE_TOL))


CONIC_TYPES = ('circle', 'ellipse', 'parabola', 'hyperbola', 'degenerate')


def conic_matrix(Q):
    """Symmetric 3x3 matrix of a quadratic ``RealPoly2``."""
    A, B, C = Q[(2, 0)], Q[(1, 1)], Q[(0, 2)]
    D, E, F = Q[(1, 0)], Q[(0, 1)], Q[(0, 0)]
    return np.array([[A, B / 2, D / 2], [B / 2, C, E / 2], [D / 2, E / 2, F]])


def conic_classify(Q, tol=1e-10):
    """Classify a real conic ``A x^2 + B xy + C y^2 + D x + E y + F = 0``.

    The coefficients are scaled so the largest quadratic one is 1. A
    vanishing determinant of the 3x3 matrix means degenerate. Otherwise the
    quadratic discriminant ``B^2 - 4AC`` decides ellipse / parabola /
    hyperbola; equal ``A`` and ``C`` with ``B = 0`` is a circle. An ellipse
    with no real points also counts as degenerate.
    """
    if Q.total_degree != 2:
        raise DegreeError(f'conic must have total degree 2, got {Q.total_degree}')
    M = conic_matrix(Q)
    quad = max(abs(M[0, 0]), abs(2 * M[0, 1]), abs(M[1, 1]))
    M = M / quad
    A, B, C = M[0, 0], 2 * M[0, 1], M[1, 1]
    det = np.linalg.det(M)
    if abs(det) <= tol * max(1.0, np.abs(M).max()) ** 3:
        return 'degenerate'
    disc = B * B - 4 * A * C
    if abs(disc) <= tol:
        return 'parabola'
    if disc > 0:
        return 'hyperbola'
    # real ellipse iff the quadratic part and the determinant have opposite sign
    if A * det > 0:
        return 'degenerate'
    if abs(A - C) <= tol and abs(B) <= tol:
        return 'circle'
    return 'ellipse'


def divided_difference_coeffs(m):
    """Coefficients of ``(z1^m - z2^m)/(z1 - z2)`` in ``s = z1+z2``, ``p = z1 z2``.

    Returns ``[c_0, ..., c_M]`` with ``M = (m-1)//2`` such that

        (z1^m - z2^m)/(z1 - z2) = sum_i (-1)^i c_i p^i s^(m-1-2i).

    Built from ``u_m = s u_{m-1} - p u_{m-2}``, ``u_0 = 0``, ``u_1 = 1``.
    """
    if m < 1:
        raise ValueError(f'm must be >= 1, got {m}')
    # u[k] holds signed coefficients of p^i s^(k-1-2i), indexed by i
    prev, cur = [], [1]
    for _ in range(m - 1):
        nxt = list(cur) + [0] * (len(prev) + 1 - len(cur))
        for i, c in enumerate(prev):
            nxt[i + 1] -= c
        prev, cur = cur, nxt
    coeffs = [(-1) ** i * c for i, c in enumerate(cur)]
    return [c for c in coeffs[:(m - 1) // 2 + 1]]
