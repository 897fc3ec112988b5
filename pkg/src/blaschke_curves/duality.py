"""Pole/polar correspondence with respect to the unit circle.

The polar of ``zeta = alpha + i beta`` is ``conj(zeta) z + zeta conj(z) = 2``,
i.e. the real line ``alpha x + beta y - 1 = 0``. The chord joining two
preimages is the polar of the meeting point of the tangents at its ends,
so the tangent lines of the exterior curve map (via their poles) onto the
interior curve and vice versa. :func:`dual_check` and
:func:`converse_check` verify this numerically at matched ``(theta, pair)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .exterior import exterior_points
from .interior import envelope_points, envelope_velocity
from .tracking import pairs, track_fans

__all__ = [
    'ProjLine', 'pole_to_polar', 'polar_to_pole', 'line_to_dual_point',
    'exterior_tangent_lines', 'interior_tangent_lines', 'dual_check',
    'converse_check', 'DualityReport',
]

W_TOL = 1e-12
TANGENT_TOL = 1e-9
MIN_RETAINED = 0.95


@dataclass(frozen=True)
class ProjLine:
    """Real line ``u x + v y + w = 0`` up to scale.

    Stored normalized: ``max(|u|, |v|, |w|) = 1`` and the first nonzero
    component positive.
    """

    u: float
    v: float
    w: float

    def __post_init__(self):
        vals = np.array([self.u, self.v, self.w], dtype=float)
        if not np.all(np.isfinite(vals)):
            raise DomainError('line coordinates must be finite')
        if max(abs(vals[0]), abs(vals[1])) == 0:
            raise DomainError('(u, v) = (0, 0) is not a line')
        vals = vals / np.abs(vals).max()
        first = vals[np.flatnonzero(vals)[0]]
        if first < 0:
            vals = -vals
        for name, x in zip('uvw', vals):
            object.__setattr__(self, name, float(x))

    @classmethod
    def through(cls, point, direction):
        """Line through ``point`` with (complex) ``direction``."""
        n = 1j * complex(direction)
        return cls(n.real, n.imag, -(n.real * point.real + n.imag * point.imag))

    def as_tuple(self):
        return (self.u, self.v, self.w)

    def residual(self, z):
        z = np.asarray(z, dtype=complex)
        return np.abs(self.u * z.real + self.v * z.imag + self.w)

    def distance(self, other):
        return float(np.abs(np.subtract(self.as_tuple(), other.as_tuple())).max())


def pole_to_polar(zeta):
    """Polar line ``Re(conj(zeta) z) = 1`` of a nonzero point."""
    zeta = complex(zeta)
    if zeta == 0:
        raise DomainError('the polar of the origin is the line at infinity')
    return ProjLine(zeta.real, zeta.imag, -1.0)


def polar_to_pole(line):
    """Pole of a line; ``None`` for lines through the origin (pole at infinity)."""
    if abs(line.w) < W_TOL:
        return None
    return complex(-line.u / line.w, -line.v / line.w)


def line_to_dual_point(line):
    """Affine dual point of ``alpha x + beta y - 1 = 0`` as ``-(alpha + i beta)``."""
    if abs(line.w) < W_TOL:
        raise DomainError('line passes through the origin; dual point at infinity')
    return -polar_to_pole(line)


def _label_pairs(d):
    idx = pairs(d)
    return idx, np.array([j for j, _ in idx]), np.array([k for _, k in idx])


def exterior_tangent_lines(B, thetas, track=True):
    """Tangent lines of the exterior curve along its parametrization.

    ``zeta = 2p/s`` with ``p = z_j z_k``, ``s = z_j + z_k``, so
    ``dzeta/dtheta = 2 (dp s - p ds) / s^2``. Returns
    ``(lines, n_skipped)`` where ``lines`` is a list of
    ``(theta, (j, k), ProjLine)`` with 1-based labels; samples at infinity
    or with ``|dzeta/dtheta| < 1e-9`` are skipped.
    """
    out, skipped = [], 0
    idx, J, K = _label_pairs(B.degree)
    for tf in track_fans(B, thetas, track=track):
        z, dz = tf.points, tf.angular_derivatives
        zj, zk, dzj, dzk = z[J], z[K], dz[J], dz[K]
        s, p = zj + zk, zj * zk
        ds, dp = dzj + dzk, dzj * zk + zj * dzk
        zeta, inf = exterior_points(zj, zk)
        with np.errstate(divide='ignore', invalid='ignore'):
            dzeta = 2 * (dp * s - p * ds) / s ** 2
        for n, (j, k) in enumerate(idx):
            if inf[n] or not abs(dzeta[n]) >= TANGENT_TOL:
                skipped += 1
                continue
            out.append((tf.theta, (j + 1, k + 1), ProjLine.through(zeta[n], dzeta[n])))
    return out, skipped


def interior_tangent_lines(B, thetas, track=True):
    """Tangent lines of the interior curve from its own path derivative.

    The direction is ``dw/dtheta`` of the envelope point, not the generating
    chord, so the converse check is not circular. Samples with a stationary
    envelope point are skipped.
    """
    out, skipped = [], 0
    idx, J, K = _label_pairs(B.degree)
    for tf in track_fans(B, thetas, track=track):
        z, dz = tf.points, tf.angular_derivatives
        w, _, _ = envelope_points(z[J], z[K], dz[J], dz[K])
        vel = envelope_velocity(B, tf, J, K)
        for n, (j, k) in enumerate(idx):
            if not (np.isfinite(w[n]) and abs(vel[n]) >= TANGENT_TOL):
                skipped += 1
                continue
            out.append((tf.theta, (j + 1, k + 1), ProjLine.through(w[n], vel[n])))
    return out, skipped


@dataclass
class DualityReport:
    max_dev: float
    mean_dev: float
    n_samples: int
    n_skipped: int
    tol: float

    @property
    def retained(self):
        return 1.0 - self.n_skipped / self.n_samples if self.n_samples else 0.0

    @property
    def passed(self):
        return (self.n_samples > 0 and self.max_dev < self.tol
                and self.retained >= MIN_RETAINED)

    def to_dict(self):
        return {
            'max_dev': self.max_dev, 'mean_dev': self.mean_dev,
            'n_samples': self.n_samples, 'n_skipped': self.n_skipped,
            'tol': self.tol, 'pass': self.passed,
        }


def _report(devs, n_total, skipped, tol):
    devs = np.asarray(devs, dtype=float)
    return DualityReport(
        float(devs.max()) if devs.size else np.inf,
        float(devs.mean()) if devs.size else np.inf,
        n_total, skipped, tol)


def dual_check(B, thetas, tol=1e-5, track=True):
    """Poles of exterior tangent lines versus interior envelope samples.

    The pole of a line is the negated dual point, so ``q = -dual(L)``; each
    ``q`` is compared with the envelope point of the same ``(theta, pair)``.
    """
    lines, skipped = exterior_tangent_lines(B, thetas, track=track)
    idx, J, K = _label_pairs(B.degree)
    envelope = {}
    for tf in track_fans(B, thetas, track=track):
        z, dz = tf.points, tf.angular_derivatives
        w, _, _ = envelope_points(z[J], z[K], dz[J], dz[K])
        for n, (j, k) in enumerate(idx):
            envelope[(tf.theta, (j + 1, k + 1))] = w[n]
    devs = []
    for theta, pair, line in lines:
        if abs(line.w) < W_TOL:
            skipped += 1
            continue
        target = envelope[(theta, pair)]
        if not np.isfinite(target):
            skipped += 1
            continue
        devs.append(abs(-line_to_dual_point(line) - target))
    return _report(devs, len(envelope), skipped, tol)


def converse_check(B, thetas, tol=1e-5, track=True):
    """Poles of interior tangent lines versus exterior samples.

    Deviations are measured relative to ``max(1, |zeta|)`` because exterior
    points run off to infinity when ``z_j + z_k`` is small.
    """
    lines, skipped = interior_tangent_lines(B, thetas, track=track)
    idx, J, K = _label_pairs(B.degree)
    exterior = {}
    for tf in track_fans(B, thetas, track=track):
        z = tf.points
        zeta, inf = exterior_points(z[J], z[K])
        for n, (j, k) in enumerate(idx):
            exterior[(tf.theta, (j + 1, k + 1))] = None if inf[n] else zeta[n]
    devs = []
    for theta, pair, line in lines:
        target = exterior[(theta, pair)]
        if target is None or abs(line.w) < W_TOL:
            skipped += 1
            continue
        q = -line_to_dual_point(line)
        devs.append(abs(q - target) / max(1.0, abs(target)))
    return _report(devs, len(exterior), skipped, tol)
