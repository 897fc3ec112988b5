"""The interior curve: envelope of chords joining preimage pairs.

The chord through unit-modulus ``z1, z2`` is ``z + p conj(z) = s`` with
``p = z1 z2`` and ``s = z1 + z2``. Along ``lam = e^{i theta}`` both move, and
the envelope condition ``dp/dtheta conj(z) = ds/dtheta`` pins the point of
tangency. Preimage velocities come from ``dz/dtheta = i lam / B'(z)``.
"""

from dataclasses import dataclass

import numpy as np

from .core import second_derivative
from .errors import ConsistencyError, DomainError
from .samples import CurveSamples, SampleRecord
from .tracking import monodromy, pairs, track_fans

__all__ = [
    'ChordLine', 'chord', 'envelope_samples', 'envelope_points',
    'marden_points', 'marden_envelope_report', 'dgm_ellipse', 'DGMEllipse',
    'siebeck_foci', 'envelope_velocity', 'STATIONARY_TOL',
]

# |dp/dtheta| below this: chord is stationary, envelope point undefined
STATIONARY_TOL = 1e-9
CONSISTENCY_TOL = 1e-7


@dataclass(frozen=True)
class ChordLine:
    """Line ``z + p conj(z) = s`` through two points of the unit circle."""

    z1: complex
    z2: complex
    p: complex
    s: complex

    def residual(self, z):
        return np.abs(z + self.p * np.conj(z) - self.s)


def chord(z1, z2):
    z1, z2 = complex(z1), complex(z2)
    for z in (z1, z2):
        if abs(abs(z) - 1) > 1e-9:
            raise DomainError(f'chord endpoint {z} is not on the unit circle')
    if abs(z1 - z2) < 1e-12:
        raise DomainError('chord endpoints coincide')
    return ChordLine(z1, z2, z1 * z2, z1 + z2)


def envelope_points(z1, z2, dz1, dz2):
    """Envelope points from endpoints and their angle derivatives.

    Returns ``(points, dp, conj_estimate)``; ``conj_estimate = ds/dp`` should
    equal ``conj(points)``. Entries with ``|dp| < STATIONARY_TOL`` are NaN.
    """
    s = z1 + z2
    p = z1 * z2
    ds = dz1 + dz2
    dp = dz1 * z2 + z1 * dz2
    ok = np.abs(dp) >= STATIONARY_TOL
    with np.errstate(divide='ignore', invalid='ignore'):
        zbar = np.where(ok, ds / dp, np.nan)
    return s - p * zbar, dp, zbar


def envelope_samples(B, thetas, track=True):
    """Sample the interior curve at every ``(theta, pair)``.

    Samples with a stationary chord are dropped and counted in
    ``n_dropped``. ``n_degenerate`` counts samples where the envelope point
    itself does not move (``|dw/dtheta| < STATIONARY_TOL``), as for degree 2
    where every chord passes through the finite zero.
    """
    tracked = track_fans(B, thetas, track=track)
    out = CurveSamples('interior')
    idx = pairs(B.degree)
    J = np.array([j for j, _ in idx])
    K = np.array([k for _, k in idx])
    for tf in tracked:
        z, dz = tf.points, tf.angular_derivatives
        pts, dp, zbar = envelope_points(z[J], z[K], dz[J], dz[K])
        vel = envelope_velocity(B, tf, J, K)
        for n, (j, k) in enumerate(idx):
            if not np.isfinite(pts[n]):
                out.n_dropped += 1
                continue
            if abs(np.conj(pts[n]) - zbar[n]) > CONSISTENCY_TOL:
                raise ConsistencyError(
                    f'envelope point inconsistent at theta={tf.theta}, '
                    f'pair {(j + 1, k + 1)}')
            if abs(vel[n]) < STATIONARY_TOL:
                out.n_degenerate += 1
            out.records.append(SampleRecord(tf.theta, (j + 1, k + 1), complex(pts[n])))
    if track:
        out.monodromy = monodromy(B, tracked)
    return out


def envelope_velocity(B, tf, J, K):
    """``dw/dtheta`` of the envelope point for the label pairs ``(J, K)``.

    The envelope point equals ``(m_k z_j + m_j z_k)/(m_j + m_k)`` with
    residues ``m = lam/(z B'(z))``, so differentiating needs ``dm/dtheta``,
    which involves ``B''``.
    """
    lam = tf.fan.lam
    z, m = tf.points, tf.residues
    dz = tf.angular_derivatives
    # m = lam / g with g = z B'(z); dg/dtheta = (B' + z B'') dz
    dB = 1j * lam / dz
    g = z * dB
    dg = (dB + z * second_derivative(B, z)) * dz
    dm = 1j * lam / g - lam * dg / g ** 2
    mj, mk, zj, zk = m[J], m[K], z[J], z[K]
    num = mk * zj + mj * zk
    den = mj + mk
    dnum = dm[K] * zj + mk * dz[J] + dm[J] * zk + mj * dz[K]
    dden = dm[J] + dm[K]
    return (dnum * den - num * dden) / den ** 2


def marden_points(fan):
    """Points dividing each chord ``z_j z_k`` in the ratio ``m_j : m_k``.

    Returns ``[((j, k), point), ...]`` with 0-based indices into
    ``fan.points``.
    """
    z, m = fan.points, fan.residues
    out = []
    for j, k in pairs(len(z)):
        den = m[j] + m[k]
        if abs(den) < 1e-12:
            raise ConsistencyError(f'residues of pair {(j, k)} cancel')
        out.append(((j, k), complex((m[j] * z[k] + m[k] * z[j]) / den)))
    return out


def marden_envelope_report(B, thetas, track=True):
    """Distance between ratio-division points and envelope points.

    Compared at matching ``(theta, pair)``; returns a dict with the maximum
    and mean distance and the number of pairs compared.
    """
    tracked = track_fans(B, thetas, track=track)
    idx = pairs(B.degree)
    devs = []
    for tf in tracked:
        z, dz = tf.points, tf.angular_derivatives
        J = np.array([j for j, _ in idx])
        K = np.array([k for _, k in idx])
        env, _, _ = envelope_points(z[J], z[K], dz[J], dz[K])
        label_of = np.argsort(tf.order)
        for (a, b), pt in marden_points(tf.fan):
            j, k = sorted((label_of[a], label_of[b]))
            devs.append(abs(env[idx.index((j, k))] - pt))
    devs = np.array(devs)
    return {
        'degree': B.degree,
        'n_pairs': int(devs.size),
        'max_dev': float(devs.max()) if devs.size else 0.0,
        'mean_dev': float(devs.mean()) if devs.size else 0.0,
    }


@dataclass(frozen=True)
class DGMEllipse:
    """Ellipse ``|z - f1| + |z - f2| = string_length``."""

    foci: tuple
    string_length: float

    def residual(self, z):
        f1, f2 = self.foci
        return np.abs(z - f1) + np.abs(z - f2) - self.string_length


def dgm_ellipse(a1, a2):
    """Interior ellipse of the degree-3 product with zeros ``0, a1, a2``."""
    a1, a2 = complex(a1), complex(a2)
    if abs(a1) >= 1 or abs(a2) >= 1:
        raise DomainError('zeros must lie in the open unit disk')
    return DGMEllipse((a1, a2), abs(1 - np.conj(a1) * a2))


def siebeck_foci(points, masses):
    """Zeros of ``sum_j m_j / (z - z_j)``.

    The numerator ``sum_j m_j prod_{i != j} (z - z_i)`` is expanded and its
    roots found with :func:`numpy.roots`.
    """
    points = np.asarray(points, dtype=complex)
    masses = np.asarray(masses, dtype=complex)
    if len(points) != len(masses):
        raise ValueError('points and masses differ in length')
    if not np.any(masses):
        raise ValueError('all masses are zero')
    num = np.zeros(len(points), dtype=complex)
    for j in range(len(points)):
        num = num + masses[j] * np.poly(np.delete(points, j))
    scale = np.abs(num).max()
    if scale == 0:
        raise ValueError('numerator vanishes identically')
    nz = np.flatnonzero(np.abs(num) > 1e-14 * scale)
    num = num[nz[0]:]
    if len(num) == 1:
        return []
    return [complex(r) for r in np.roots(num)]
