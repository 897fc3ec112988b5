"""Continuous labelling of preimage branches along an angle grid."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import preimage_fans
from .errors import BranchTrackingError

__all__ = ['TrackedFan', 'track_fans', 'monodromy', 'pairs']


@dataclass(frozen=True, eq=False)
class TrackedFan:
    """A preimage fan plus the branch labelling at this angle.

    ``order[label]`` is the index into ``fan.points`` of branch ``label``.
    """

    theta: float
    fan: object
    order: np.ndarray

    @property
    def points(self):
        return self.fan.points[self.order]

    @property
    def residues(self):
        return self.fan.residues[self.order]

    @property
    def angular_derivatives(self):
        return self.fan.angular_derivatives[self.order]


def pairs(d):
    """All 0-based index pairs ``(j, k)``, ``j < k``."""
    return list(combinations(range(d), 2))


def _match(prev_pts, prev_dz, dtheta, new_pts):
    predicted = prev_pts + dtheta * prev_dz
    dist = np.abs(predicted[:, None] - new_pts[None, :])
    nearest = dist.argmin(axis=1)
    if len(set(nearest.tolist())) != len(nearest):
        raise BranchTrackingError(
            'two branches matched the same preimage; refine the angle grid')
    return nearest


def track_fans(B, thetas, track=True):
    """Preimage fans at ``e^{i theta}`` with consistent branch labels.

    Labels at the first angle follow the argument ordering. With
    ``track=True`` later fans are matched to a first-order prediction of the
    previous one by nearest point; with ``track=False`` every fan keeps its
    own argument ordering (use for arbitrary, unordered grids).
    """
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size == 0:
        return []
    fans = preimage_fans(B, np.exp(1j * thetas))
    d = B.degree
    out = []
    order = np.arange(d)
    for n, (th, fan) in enumerate(zip(thetas, fans)):
        if track and n > 0:
            prev = out[-1]
            order = _match(prev.points, prev.angular_derivatives,
                           th - prev.theta, fan.points)
        out.append(TrackedFan(float(th), fan, order))
    return out


def monodromy(B, tracked):
    """Branch permutation after the grid wraps once around the circle.

    Returns ``perm`` with ``perm[label] = label at the start`` matched by the
    continuation of ``label`` from the last angle to ``theta_0 + 2 pi``, or
    ``None`` when the grid does not look like one uniform loop.
    """
    if len(tracked) < 2:
        return None
    th = np.array([t.theta for t in tracked])
    step = np.diff(th)
    gap = th[0] + 2 * np.pi - th[-1]
    if not (np.all(step > 0) and np.allclose(step, gap, rtol=1e-6, atol=1e-12)):
        return None
    last, first = tracked[-1], tracked[0]
    idx = _match(last.points, last.angular_derivatives, gap, first.points)
    start_label = np.argsort(first.order)
    return tuple(int(start_label[i]) for i in idx)
