"""Batched Aberth-Ehrlich iteration for polynomials with complex coefficients."""

import numpy as np

from .errors import ConvergenceError

__all__ = ['aberth', 'circle_start']


def circle_start(batch, degree, radius=1.0, offset=0.4):
    """Equally spaced starting points on a circle, rotated off the real axis.

    The rotation keeps the start away from the symmetric configurations
    (e.g. roots of unity) that appear for ``z**d - 1``.
    """
    k = np.arange(degree)
    ring = radius * np.exp(1j * (2.0 * np.pi * k + offset) / degree)
    return np.broadcast_to(ring, (batch, degree)).copy()


def _horner(coeffs, z):
    # coeffs: (batch, n+1) highest degree first; z: (batch, m)
    p = np.broadcast_to(coeffs[:, :1], z.shape).astype(complex)
    dp = np.zeros_like(p)
    for c in coeffs[:, 1:].T:
        dp = dp * z + p
        p = p * z + c[:, None]
    return p, dp


def aberth(coeffs, z0=None, tol=1e-13, maxiter=200):
    """Simultaneously refine all roots of a batch of polynomials.

    Parameters
    ----------
    coeffs : array_like, shape (batch, n+1) or (n+1,)
        Coefficients, highest degree first. The leading coefficient must be
        nonzero for every row.
    z0 : array_like, shape (batch, n), optional
        Starting points. Defaults to :func:`circle_start` on the unit circle.
    tol : float
        Iteration stops for a row once its largest correction is below
        ``tol``.
    maxiter : int
        Iteration cap; exceeding it raises :class:`ConvergenceError`.

    Returns
    -------
    roots : ndarray, shape (batch, n) or (n,)
    iterations : int
        Number of sweeps performed for the slowest row.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    single = coeffs.ndim == 1
    if single:
        coeffs = coeffs[None, :]
    batch, n = coeffs.shape[0], coeffs.shape[1] - 1
    if n < 1:
        raise ValueError('polynomial degree must be at least 1')
    if np.any(coeffs[:, 0] == 0):
        raise ValueError('leading coefficient is zero')
    coeffs = coeffs / coeffs[:, :1]

    if z0 is None:
        z = circle_start(batch, n)
    else:
        z = np.array(z0, dtype=complex).reshape(batch, n)

    active = np.ones(batch, dtype=bool)
    eye = np.eye(n, dtype=bool)
    for it in range(1, maxiter + 1):
        za = z[active]
        p, dp = _horner(coeffs[active], za)
        with np.errstate(divide='ignore', invalid='ignore'):
            w = np.where(p == 0, 0.0, p / dp)
            diff = za[:, :, None] - za[:, None, :]
            diff[:, eye] = np.inf
            repulsion = (1.0 / diff).sum(axis=2)
            step = w / (1.0 - w * repulsion)
        finite = np.isfinite(step)
        step = np.where(finite, step, 0.0)
        za = za - step
        z[active] = za
        done = (np.abs(step).max(axis=1) < tol) & finite.all(axis=1)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        if not active.any():
            return (z[0] if single else z), it

    p, _ = _horner(coeffs, z)
    worst = float(np.abs(p).max())
    raise ConvergenceError(
        f'Aberth iteration did not converge in {maxiter} sweeps '
        f'(worst residual {worst:.3e})', worst_residual=worst)
