"""Standalone SVG figures: unit circle, zeros, both curves, chords, tangents.

The exterior curve can be unbounded, so it is drawn as the zero contour of
its real-form polynomial over the window ``[-R, R]^2`` (marching squares via
:func:`skimage.measure.find_contours`). The interior curve is drawn from
sampled envelope points, one polyline per branch pair.
"""

from dataclasses import dataclass

import numpy as np
from skimage.measure import find_contours

from .core import preimage_fans
from .exterior import exterior_equation
from .interior import envelope_samples
from .sympoly import to_real_form

__all__ = ['PlotSpec', 'LAYERS', 'render_svg', 'contour_polylines']

LAYERS = ('unit_circle', 'zeros', 'exterior', 'interior', 'chords', 'tangents')
DEFAULT_LAYERS = ('unit_circle', 'zeros', 'exterior', 'interior')
SIZE = 800

STYLE = {
    'unit_circle': 'fill="none" stroke="#000" stroke-width="1.2"',
    'zeros': 'fill="#c00" stroke="none"',
    'exterior': 'fill="none" stroke="#036" stroke-width="2.5"',
    'interior': 'fill="none" stroke="#a40" stroke-width="1.5"',
    'chords': 'fill="none" stroke="#888" stroke-width="0.4"',
    'tangents': 'fill="none" stroke="#6a6" stroke-width="0.4"',
}


@dataclass(frozen=True)
class PlotSpec:
    viewport: float = 4.0
    grid: int = 512
    layers: tuple = DEFAULT_LAYERS
    chord_frames: int = 24
    envelope_samples: int = 720

    def __post_init__(self):
        if not self.viewport > 0:
            raise ValueError('viewport must be positive')
        if self.grid < 16:
            raise ValueError('grid must be at least 16')
        if not self.layers:
            raise ValueError('at least one layer is required')
        unknown = set(self.layers) - set(LAYERS)
        if unknown:
            raise ValueError(f'unknown layers: {sorted(unknown)}')


class _Canvas:
    def __init__(self, R):
        self.R = R
        self.k = SIZE / (2 * R)

    def xy(self, z):
        return (z.real + self.R) * self.k, (self.R - z.imag) * self.k

    def fmt(self, z):
        x, y = self.xy(z)
        return f'{x:.3f},{y:.3f}'

    def polyline(self, pts):
        pts = list(pts)
        if len(pts) < 2:
            return ''
        return 'M' + ' L'.join(self.fmt(p) for p in pts)


def contour_polylines(poly, R, grid):
    """Zero contours of a ``RealPoly2`` as lists of complex points."""
    xs = np.linspace(-R, R, grid)
    X, Y = np.meshgrid(xs, xs, indexing='ij')
    values = poly(X, Y)
    step = xs[1] - xs[0]
    return [(-R + step * c[:, 0]) + 1j * (-R + step * c[:, 1])
            for c in find_contours(values, 0.0)]


def _clip_line(p, direction, R):
    """Segment of the line through ``p`` that covers the window."""
    u = direction / abs(direction)
    span = 2 * R * np.sqrt(2) + abs(p)
    return p - span * u, p + span * u


def _split_jumps(points, max_jump):
    out, cur = [], []
    for p in points:
        if cur and abs(p - cur[-1]) > max_jump:
            out.append(cur)
            cur = []
        cur.append(p)
    out.append(cur)
    return out


def render_svg(B, spec=PlotSpec()):
    """Return the SVG document for ``B`` as a string."""
    R = spec.viewport
    cv = _Canvas(R)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="#fff"/>',
        '<defs><clipPath id="win"><rect width="{0}" height="{0}"/></clipPath></defs>'.format(SIZE),
    ]
    for layer in LAYERS:
        if layer not in spec.layers:
            continue
        d = _layer_path(layer, B, spec, cv)
        parts.append(f'<g id="{layer}" clip-path="url(#win)">'
                     f'<path d="{d}" {STYLE[layer]}/></g>')
    parts.append('</svg>')
    return '\n'.join(parts) + '\n'


def _layer_path(layer, B, spec, cv):
    R = spec.viewport
    if layer == 'unit_circle':
        r = cv.k
        cx, cy = cv.xy(0j)
        return (f'M{cx + r:.3f},{cy:.3f} A{r:.3f},{r:.3f} 0 1 0 {cx - r:.3f},{cy:.3f} '
                f'A{r:.3f},{r:.3f} 0 1 0 {cx + r:.3f},{cy:.3f} Z')
    if layer == 'zeros':
        r = 4.0
        out = []
        for a in (0j,) + B.zeros:
            x, y = cv.xy(a)
            out.append(f'M{x + r:.3f},{y:.3f} A{r},{r} 0 1 0 {x - r:.3f},{y:.3f} '
                       f'A{r},{r} 0 1 0 {x + r:.3f},{y:.3f} Z')
        return ' '.join(out)
    if layer == 'exterior':
        poly = to_real_form(exterior_equation(B))
        return ' '.join(cv.polyline(c) for c in contour_polylines(poly, R, spec.grid))
    if layer == 'interior':
        thetas = np.linspace(0, 2 * np.pi, spec.envelope_samples, endpoint=False)
        samples = envelope_samples(B, thetas)
        by_pair = {}
        for rec in samples:
            by_pair.setdefault(rec.pair, []).append(rec.point)
        out = []
        for pair in sorted(by_pair):
            out.extend(cv.polyline(seg) for seg in _split_jumps(by_pair[pair], 0.1 * R))
        return ' '.join(o for o in out if o)
    thetas = np.linspace(0, 2 * np.pi, spec.chord_frames, endpoint=False)
    fans = preimage_fans(B, np.exp(1j * thetas))
    out = []
    for fan in fans:
        z = fan.points
        if layer == 'chords':
            for j in range(len(z)):
                for k in range(j + 1, len(z)):
                    out.append(cv.polyline([z[j], z[k]]))
        else:
            for p in z:
                out.append(cv.polyline(_clip_line(p, 1j * p, R)))
    return ' '.join(out)
