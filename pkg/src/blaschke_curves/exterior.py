"""The exterior curve: intersections of unit-circle tangents at preimage pairs.

For preimages ``z_j, z_k`` of one boundary value the two tangent lines meet
at ``zeta = 2 z_j z_k / (z_j + z_k)``; equivalently ``z_j z_k = zeta/conj(zeta)``
and ``z_j + z_k = 2/conj(zeta)``. Eliminating the boundary value from
``B(z_j) = B(z_k)`` and substituting gives a polynomial in ``(z, conj z)``
of total degree at most ``d - 1`` (:func:`exterior_equation`).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegreeError
from .samples import CurveSamples, SampleRecord
from .sympoly import BivarPoly, divided_difference_coeffs
from .tracking import monodromy, pairs, track_fans

__all__ = [
    'exterior_equation', 'exterior_equation_closed', 'exterior_points',
    'exterior_samples', 'degeneracy_report', 'DegeneracyReport',
    'scalar_match', 'AT_INFINITY_TOL',
]

AT_INFINITY_TOL = 1e-9


def exterior_equation(B, normalize=True):
    """Defining polynomial of the exterior curve of ``B``.

    Sums, over ``1 <= N <= d`` and ``0 <= K < N``,

        (-1)^(d-N+K) (s_{d-N} conj(s_K) - conj(s_N) s_{d-K})
            * z^K conj(z)^(d-N) * sum_i (-1)^i c_i 2^(N-K-1-2i) (z conj z)^i

    where ``s`` are the elementary symmetric polynomials of the zeros and
    ``c_i = divided_difference_coeffs(N - K)[i]``. With ``normalize`` the
    result is scaled by a positive real so its leading term (largest
    ``i+j``, then largest ``i``) has modulus 1.
    """
    d = B.degree
    s = B.sigma
    sb = [np.conj(v) for v in s]
    coeffs = {}
    for N in range(1, d + 1):
        for K in range(N):
            g = (-1) ** (d - N + K) * (s[d - N] * sb[K] - sb[N] * s[d - K])
            if g == 0:
                continue
            m = N - K
            for i, c in enumerate(divided_difference_coeffs(m)):
                key = (K + i, d - N + i)
                term = g * (-1) ** i * c * 2.0 ** (m - 1 - 2 * i)
                coeffs[key] = coeffs.get(key, 0j) + term
    P = BivarPoly(coeffs)
    return P.normalized() if normalize else P


def exterior_equation_closed(d, sigma):
    """Hand-written exterior equations for ``d = 2 .. 5``.

    ``sigma`` is ``[s_0, ..., s_d]`` or ``[s_0, ..., s_{d-1}]``. The result is
    not normalized; it agrees with :func:`exterior_equation` up to a real
    scalar.
    """
    if d not in (2, 3, 4, 5):
        raise DegreeError(f'closed form available for d = 2..5, not {d}')
    sigma = [complex(v) for v in sigma]
    if len(sigma) not in (d, d + 1):
        raise ValueError(f'expected {d + 1} symmetric polynomials, got {len(sigma)}')
    s = sigma + [0j] * (d + 1 - len(sigma))
    c = np.conj
    if d == 2:
        a = s[1]
        t = {(1, 0): c(a), (0, 1): a, (0, 0): -2}
    elif d == 3:
        s1, s2 = s[1], s[2]
        t = {
            (2, 0): c(s2),
            (1, 1): -(abs(s2) ** 2 - abs(s1) ** 2 + 1),
            (0, 2): s2,
            (1, 0): -2 * c(s1),
            (0, 1): -2 * s1,
            (0, 0): 4,
        }
    elif d == 4:
        s1, s2, s3 = s[1], s[2], s[3]
        t = {
            (3, 0): c(s3),
            (2, 1): s1 * c(s2) - s2 * c(s3) - c(s1),
            (1, 2): -(s1 - s2 * c(s1) + s3 * c(s2)),
            (0, 3): s3,
            (2, 0): -2 * c(s2),
            (1, 1): -(2 * s1 * c(s1) - 2 * s3 * c(s3) - 4),
            (0, 2): -2 * s2,
            (1, 0): 4 * c(s1),
            (0, 1): 4 * s1,
            (0, 0): -8,
        }
    else:
        s1, s2, s3, s4 = s[1], s[2], s[3], s[4]
        t = {
            (4, 0): c(s4),
            (3, 1): s1 * c(s3) - c(s2) - s2 * c(s4),
            (2, 2): -(s1 * c(s1) - s2 * c(s2) + s3 * c(s3) - s4 * c(s4) - 1),
            (1, 3): s3 * c(s1) - s4 * c(s2) - s2,
            (0, 4): s4,
            (3, 0): -2 * c(s3),
            (2, 1): 2 * (2 * c(s1) - s1 * c(s2) + s3 * c(s4)),
            (1, 2): -2 * (s2 * c(s1) - 2 * s1 - s4 * c(s3)),
            (0, 3): -2 * s3,
            (2, 0): 4 * c(s2),
            (1, 1): 4 * (s1 * c(s1) - s4 * c(s4) - 3),
            (0, 2): 4 * s2,
            (1, 0): -8 * c(s1),
            (0, 1): -8 * s1,
            (0, 0): 16,
        }
    return BivarPoly(t)


def scalar_match(P, Q):
    """Best real ``r`` with ``P ~ r Q`` and the relative mismatch.

    Returns ``(r, rel_err)`` where ``rel_err = max|P - rQ| / max|P|`` over
    the union of both supports.
    """
    keys = sorted(set(P.coeffs) | set(Q.coeffs))
    p = np.array([P[k] for k in keys])
    q = np.array([Q[k] for k in keys])
    denom = np.vdot(q, q).real
    if denom == 0:
        return 0.0, (0.0 if not np.any(p) else np.inf)
    r = np.vdot(q, p).real / denom
    scale = np.abs(p).max() if np.any(p) else 1.0
    return float(r), float(np.abs(p - r * q).max() / scale)


def exterior_points(z1, z2):
    """Tangent-line intersections for arrays of endpoint pairs.

    Returns ``(points, at_infinity)``; ``points`` is NaN where the tangents
    are parallel (``|z1 + z2| < AT_INFINITY_TOL``).
    """
    s = np.asarray(z1) + np.asarray(z2)
    inf = np.abs(s) < AT_INFINITY_TOL
    with np.errstate(divide='ignore', invalid='ignore'):
        pts = np.where(inf, np.nan + 0j, 2 * np.asarray(z1) * np.asarray(z2) / s)
    return pts, inf


def exterior_samples(B, thetas, track=True):
    """Sample the exterior curve over the boundary values ``e^{i theta}``.

    One record per ``(theta, pair)``; pair labels are the tracked branch
    labels (see :func:`~blaschke_curves.tracking.track_fans`), 1-based.
    """
    tracked = track_fans(B, thetas, track=track)
    out = CurveSamples('exterior')
    idx = pairs(B.degree)
    J = np.array([j for j, _ in idx])
    K = np.array([k for _, k in idx])
    for tf in tracked:
        z = tf.points
        pts, inf = exterior_points(z[J], z[K])
        for n, (j, k) in enumerate(idx):
            out.records.append(SampleRecord(
                tf.theta, (j + 1, k + 1),
                None if inf[n] else complex(pts[n]), bool(inf[n])))
    if track:
        out.monodromy = monodromy(B, tracked)
    return out


@dataclass(frozen=True)
class DegeneracyReport:
    actual_degree: int
    nominal_degree: int
    # only meaningful for d = 4: a zero at the origin besides the implicit
    # one and the remaining two zeros summing to 0
    double_origin_condition: bool = None

    @property
    def degenerate(self):
        return self.actual_degree < self.nominal_degree

    def to_dict(self):
        return {
            'actual_degree': self.actual_degree,
            'nominal_degree': self.nominal_degree,
            'double_origin_condition': self.double_origin_condition,
        }


def degeneracy_report(B, tol=1e-12):
    """Compare the builder's total degree with the nominal ``d - 1``."""
    P = exterior_equation(B)
    cond = None
    if B.degree == 4:
        a = B.zeros
        cond = any(abs(a[i]) <= tol and abs(sum(a) - a[i]) <= tol
                   for i in range(3))
    return DegeneracyReport(P.total_degree, B.degree - 1, cond)
