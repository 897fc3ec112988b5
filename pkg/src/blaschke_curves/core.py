"""Canonical finite Blaschke products and their unit-circle preimages.

A canonical product of degree ``d`` is

    B(z) = z * prod_k (z - a_k) / (1 - conj(a_k) z),    k = 1 .. d-1,

with every ``|a_k| < 1``. Writing ``sigma_k`` for the elementary symmetric
polynomials of the ``a_k`` (``sigma_0 = 1``, ``sigma_d = 0``), the numerator
and denominator are

    P(z) = sum_k (-1)^k sigma_k z^(d-k),
    Q(z) = sum_k (-1)^k conj(sigma_k) z^k.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConvergenceError, DegreeError, DomainError, PoleError
from .roots import aberth

__all__ = [
    'BlaschkeProduct', 'PreimageFan', 'make_canonical', 'canonical_zeros',
    'canonicalize', 'evaluate', 'derivative', 'second_derivative',
    'preimages', 'preimage_fans', 'elementary_symmetric', 'random_zeros',
    'random_product',
]

POLE_TOL = 1e-12
UNIT_TOL = 1e-12
ROOT_TOL = 1e-13
ROOT_MAXITER = 200
# raw roots further than this from the circle indicate a solver bug
CIRCLE_TOL = 1e-7


def elementary_symmetric(values):
    """Return ``[e_0, e_1, ..., e_n]`` for the given values (``e_0 = 1``)."""
    e = np.zeros(len(values) + 1, dtype=complex)
    e[0] = 1.0
    for i, v in enumerate(values):
        e[1:i + 2] = e[1:i + 2] + v * e[0:i + 1]
    return e


def _check_zeros(zeros):
    zeros = [complex(a) for a in zeros]
    for k, a in enumerate(zeros):
        if not abs(a) < 1.0:
            raise DomainError(
                f'zero #{k} = {a} has modulus {abs(a):.6g}, must be < 1')
    return zeros


@dataclass(frozen=True, eq=False)
class BlaschkeProduct:
    """Canonical Blaschke product given by its non-origin zeros.

    Use :func:`make_canonical` rather than the constructor directly; it
    validates the zeros.
    """

    zeros: tuple
    degree: int = field(init=False)
    sigma: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'zeros', tuple(complex(a) for a in self.zeros))
        object.__setattr__(self, 'degree', len(self.zeros) + 1)
        sig = list(elementary_symmetric(self.zeros)) + [0j]
        object.__setattr__(self, 'sigma', tuple(complex(s) for s in sig))

    def __repr__(self):
        return f'BlaschkeProduct(zeros={list(self.zeros)!r})'

    @cached_property
    def numerator(self):
        """Coefficients of ``P``, highest degree first (length ``d+1``)."""
        d = self.degree
        return np.array([(-1) ** k * self.sigma[k] if k < d else 0j
                         for k in range(d + 1)])

    @cached_property
    def denominator(self):
        """Coefficients of ``Q``, highest degree first (length ``d+1``)."""
        d = self.degree
        q = [(-1) ** k * np.conj(self.sigma[k]) for k in range(d)]
        return np.array([0j] + q[::-1])

    @cached_property
    def poles(self):
        # zeros this close to the origin put their pole beyond 1e150
        return np.array([1.0 / np.conj(a) for a in self.zeros if abs(a) > 1e-150])

    @cached_property
    def _all_zeros(self):
        return np.array((0j,) + self.zeros)

    def __call__(self, z):
        return evaluate(self, z)


def make_canonical(zeros):
    """Build a canonical product from its non-origin zeros.

    ``zeros`` holds ``a_1 .. a_{d-1}``; the zero at the origin is implicit,
    so ``make_canonical([0, 0])`` is ``z**3``.
    """
    zeros = _check_zeros(zeros)
    if not zeros:
        raise DegreeError('degree-1 products have no interior or exterior '
                          'curve; give at least one zero')
    return BlaschkeProduct(tuple(zeros))


def canonical_zeros(zeros, theta=0.0):
    """Normalize a general Blaschke product to canonical form.

    The input is ``e^{i theta} prod_{k=1}^{d} (z - a_k)/(1 - conj(a_k) z)``
    with all ``d`` zeros listed. With ``f1(z) = e^{-i theta/d} z`` and
    ``f2`` the disk automorphism sending ``c = B(0)`` to 0, the composition
    ``f2 o B o f1`` is canonical.

    Returns
    -------
    new_zeros : list of complex
        The ``d - 1`` non-origin zeros of the canonical product.
    rotation : complex
        ``e^{-i theta/d}``, the factor of ``f1``.
    moebius_param : complex
        ``c = (-1)^d a_1...a_d e^{i theta}``; ``f2(w) = (w - c)/(1 - conj(c) w)``.
    """
    zeros = _check_zeros(zeros)
    d = len(zeros)
    if d == 0:
        raise DegreeError('need at least one zero')
    rotation = np.exp(-1j * theta / d)
    c = (-1) ** d * np.prod(zeros) * np.exp(1j * theta)
    # B o f1 has zeros a_k / rotation and constant 1; its canonical form is
    # (P - cQ)/(Q - conj(c) P), and P - cQ vanishes at the origin.
    rotated = [a / rotation for a in zeros]
    p = np.poly(rotated)
    q = np.conj(p[::-1])
    num = (p - c * q)[:-1]
    if d == 1:
        return [], rotation, c
    new = aberth(num, z0=_interior_start(d - 1))[0]
    return [complex(a) for a in new], rotation, c


def _interior_start(n):
    return 0.5 * np.exp(1j * (2 * np.pi * np.arange(n) + 0.4) / n)[None, :]


def canonicalize(zeros, theta=0.0):
    """Like :func:`canonical_zeros` but returns a :class:`BlaschkeProduct`."""
    new, rotation, c = canonical_zeros(zeros, theta)
    return make_canonical(new), rotation, c


def general_evaluate(zeros, theta, z):
    """Evaluate ``e^{i theta} prod (z - a_k)/(1 - conj(a_k) z)``."""
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, np.exp(1j * theta), dtype=complex)
    for a in zeros:
        out = out * (z - a) / (1 - np.conj(a) * z)
    return out


def _check_poles(B, z):
    if len(B.poles) == 0:
        return
    dist = np.abs(np.asarray(z)[..., None] - B.poles).min(axis=-1)
    if np.any(dist < POLE_TOL):
        raise PoleError(f'evaluation point within {POLE_TOL:g} of a pole')


def _scalar(z, out):
    return complex(out) if np.ndim(z) == 0 else out


def evaluate(B, z):
    """``B(z)`` for a scalar or array ``z``."""
    zz = np.asarray(z, dtype=complex)
    _check_poles(B, zz)
    out = zz.copy()
    for a in B.zeros:
        out = out * (zz - a) / (1 - np.conj(a) * zz)
    return _scalar(z, out)


def _factor_values(B, z):
    a = np.array(B.zeros)
    f = (z[..., None] - a) / (1 - np.conj(a) * z[..., None])
    df = (1 - np.abs(a) ** 2) / (1 - np.conj(a) * z[..., None]) ** 2
    f = np.concatenate([z[..., None], f], axis=-1)
    df = np.concatenate([np.ones(z.shape + (1,)), df], axis=-1)
    return f, df


def derivative(B, z):
    """``B'(z)``.

    Uses the logarithmic derivative away from the zeros and the product
    rule within ``1e-8`` of a zero, where the logarithmic form is singular.
    """
    zz = np.asarray(z, dtype=complex)
    _check_poles(B, zz)
    allz = B._all_zeros
    near = np.abs(zz[..., None] - allz).min(axis=-1) < 1e-8
    out = np.empty(zz.shape, dtype=complex)

    far = ~near
    if far.any():
        w = zz[far]
        a = np.array(B.zeros)
        logd = 1.0 / w
        if len(a):
            logd = logd + (1.0 / (w[:, None] - a)
                           + np.conj(a) / (1 - np.conj(a) * w[:, None])).sum(axis=1)
        out[far] = evaluate(B, w) * logd
    if near.any():
        f, df = _factor_values(B, zz[near])
        total = np.zeros(f.shape[:-1], dtype=complex)
        for i in range(f.shape[-1]):
            others = np.delete(f, i, axis=-1).prod(axis=-1)
            total = total + df[..., i] * others
        out[near] = total
    return _scalar(z, out)


def second_derivative(B, z):
    """``B''(z)`` via the quotient rule on ``P/Q`` (valid off the poles)."""
    zz = np.asarray(z, dtype=complex)
    _check_poles(B, zz)
    P, Q = B.numerator, B.denominator
    p, q = np.polyval(P, zz), np.polyval(Q, zz)
    dP, dQ = np.polyder(P), np.polyder(Q)
    p1, q1 = np.polyval(dP, zz), np.polyval(dQ, zz)
    p2, q2 = np.polyval(np.polyder(dP), zz), np.polyval(np.polyder(dQ), zz)
    out = (p2 * q - p * q2) / q ** 2 - 2 * q1 * (p1 * q - p * q1) / q ** 3
    return _scalar(z, out)


@dataclass(frozen=True, eq=False)
class PreimageFan:
    """The ``d`` unit-circle solutions of ``B(z) = lam``.

    ``points`` are sorted by principal argument in ``[0, 2pi)``.
    ``residues[j] = lam / (z_j B'(z_j))`` are the partial-fraction
    coefficients of ``(B(z)/z) / (B(z) - lam)`` and
    ``angular_derivatives[j] = i lam / B'(z_j)`` is ``dz_j/dtheta`` for
    ``lam = e^{i theta}``.
    """

    lam: complex
    points: np.ndarray
    residues: np.ndarray
    angular_derivatives: np.ndarray

    @property
    def degree(self):
        return len(self.points)

    @property
    def theta(self):
        return float(np.mod(np.angle(self.lam), 2 * np.pi))


def preimage_fans(B, lams):
    """Solve ``P(z) - lam Q(z) = 0`` for every ``lam`` in one batch.

    Returns a list of :class:`PreimageFan`, one per ``lam``.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    if np.any(np.abs(np.abs(lams) - 1.0) > UNIT_TOL):
        raise DomainError('boundary value must have modulus 1')
    coeffs = B.numerator[None, :] - lams[:, None] * B.denominator[None, :]
    roots, _ = aberth(coeffs, tol=ROOT_TOL, maxiter=ROOT_MAXITER)

    off = np.abs(np.abs(roots) - 1.0)
    if off.max() > CIRCLE_TOL:
        raise ConvergenceError(
            f'preimage off the unit circle by {off.max():.3e}',
            worst_residual=float(off.max()))
    order = np.argsort(np.mod(np.angle(roots), 2 * np.pi), axis=1)
    roots = np.take_along_axis(roots, order, axis=1)
    dB = derivative(B, roots)
    res = lams[:, None] / (roots * dB)
    dz = 1j * lams[:, None] / dB
    return [PreimageFan(complex(lams[i]), roots[i], res[i], dz[i])
            for i in range(len(lams))]


def preimages(B, lam):
    """The :class:`PreimageFan` of a single boundary value ``lam``."""
    return preimage_fans(B, [lam])[0]


def random_zeros(rng, n, rmax=0.9):
    """``n`` points uniformly distributed (by area) in the disk ``|z| < rmax``."""
    r = rmax * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return [complex(v) for v in r * np.exp(1j * t)]


def random_product(rng, degree, rmax=0.9):
    return make_canonical(random_zeros(rng, degree - 1, rmax))

