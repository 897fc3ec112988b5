import numpy as np
import pytest

from blaschke_curves.core import make_canonical, preimages, random_product
from blaschke_curves.duality import ProjLine, polar_to_pole
from blaschke_curves.errors import DomainError
from blaschke_curves.exterior import exterior_equation
from blaschke_curves.interior import (chord, dgm_ellipse, envelope_samples,
                                      marden_envelope_report, marden_points,
                                      siebeck_foci)

GRID = np.linspace(0, 2 * np.pi, 256, endpoint=False)


def test_chord_real_axis():
    c = chord(1, -1)
    assert c.p == -1 and c.s == 0
    # z - conj z = 0 is the real axis
    assert c.residual(0.37) == 0
    assert c.residual(0.2j) > 0


def test_chord_one_i():
    c = chord(1, 1j)
    assert c.p == 1j and c.s == 1 + 1j


def test_chord_endpoints_on_line(rng):
    for _ in range(20):
        z1, z2 = np.exp(2j * np.pi * rng.random(2))
        c = chord(z1, z2)
        assert c.residual(z1) < 1e-14 and c.residual(z2) < 1e-14
        assert c.residual((z1 + z2) / 2) < 1e-14


def test_chord_requires_unit_points():
    with pytest.raises(DomainError):
        chord(0.5, 1)


def test_z_cubed_envelope_radius_half():
    s = envelope_samples(make_canonical([0, 0]), GRID)
    pts = [r.point for r in s if r.pair == (1, 2)]
    assert len(pts) == 256
    assert np.allclose(np.abs(pts), 0.5)


def test_half_zero_envelope_on_ellipse():
    E = dgm_ellipse(0.5, 0)
    pts = envelope_samples(make_canonical([0.5, 0]), GRID).finite_points()
    assert np.abs(E.residual(pts)).max() < 1e-8


def test_degree3_envelope_equals_marden(rng):
    for _ in range(5):
        assert marden_envelope_report(random_product(rng, 3), GRID)['max_dev'] < 1e-8


def test_marden_z_cubed_midpoint():
    fan = preimages(make_canonical([0, 0]), 1)
    w = np.exp(2j * np.pi / 3)
    pts = dict(marden_points(fan))
    j = int(np.argmin(np.abs(fan.points - 1)))
    k = int(np.argmin(np.abs(fan.points - w)))
    pt = pts[tuple(sorted((j, k)))]
    assert abs(pt - (0.25 + np.sqrt(3) / 4 * 1j)) < 1e-14
    assert abs(abs(pt) - 0.5) < 1e-14


def test_marden_tangent_to_ellipse():
    E = dgm_ellipse(0.5, 0)
    fan = preimages(make_canonical([0.5, 0]), np.exp(0.7j))
    for (j, k), pt in marden_points(fan):
        assert abs(E.residual(pt)) < 1e-12
        # the chord touches the ellipse: nearby chord points lie outside
        c = chord(fan.points[j], fan.points[k])
        direction = fan.points[k] - fan.points[j]
        for t in (-1e-3, 1e-3):
            q = pt + t * direction
            assert c.residual(q) < 1e-12
            assert E.residual(q) > 0


def test_marden_division_ratio(rng):
    fan = preimages(random_product(rng, 3), np.exp(2j * np.pi * rng.random()))
    m = fan.residues.real
    for (j, k), pt in marden_points(fan):
        ratio = abs(pt - fan.points[j]) / abs(pt - fan.points[k])
        assert ratio == pytest.approx(m[j] / m[k], rel=1e-12)


def test_dgm_ellipse_cases(rng):
    E = dgm_ellipse(0, 0)
    assert E.string_length == 1 and E.foci == (0, 0)
    E = dgm_ellipse(0.5, 0)
    assert E.string_length == 1 and set(E.foci) == {0.5, 0}
    a = np.sqrt(rng.random((1000, 2))) * np.exp(2j * np.pi * rng.random((1000, 2)))
    for a1, a2 in a:
        E = dgm_ellipse(a1, a2)
        assert E.string_length - abs(a1 - a2) > 0


def test_siebeck_cube_roots():
    w = np.exp(2j * np.pi * np.arange(3) / 3)
    foci = siebeck_foci(w, [1 / 3] * 3)
    assert np.abs(foci).max() < 1e-7


def test_siebeck_recovers_zeros(rng):
    for d in range(3, 7):
        B = random_product(rng, d)
        for lam in np.exp(2j * np.pi * rng.random(3)):
            fan = preimages(B, lam)
            foci = list(siebeck_foci(fan.points, fan.residues))
            for a in B.zeros:
                i = int(np.argmin(np.abs(np.array(foci) - a)))
                assert abs(foci.pop(i) - a) < 1e-8


def test_siebeck_half_zero():
    fan = preimages(make_canonical([0.5, 0]), 1j)
    foci = sorted(siebeck_foci(fan.points, fan.residues), key=abs)
    assert abs(foci[0]) < 1e-10 and abs(foci[1] - 0.5) < 1e-10


def test_degree_two_envelope_is_stationary():
    a = 0.3 + 0.4j
    B = make_canonical([a])
    s = envelope_samples(B, GRID[:64])
    assert s.n_degenerate == 64
    assert {r.pair for r in s} == {(1, 2)}
    # every chord passes through the pole of the exterior line
    P = exterior_equation(B)
    ext_line = ProjLine(2 * P[(1, 0)].real, -2 * P[(1, 0)].imag, P[(0, 0)].real)
    pole = polar_to_pole(ext_line)
    assert abs(pole - a) < 1e-12
    assert np.abs(s.finite_points() - pole).max() < 1e-9
