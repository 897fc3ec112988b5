import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from blaschke_curves.complexfmt import format_complex, parse_complex
from blaschke_curves.core import make_canonical, preimages
from blaschke_curves.duality import polar_to_pole, pole_to_polar
from blaschke_curves.exterior import exterior_equation, exterior_samples
from blaschke_curves.interior import siebeck_foci

disk_point = st.builds(
    lambda r, t: complex(r * np.cos(t), r * np.sin(t)),
    st.floats(0, 0.85), st.floats(0, 2 * np.pi))
zero_lists = st.lists(disk_point, min_size=1, max_size=5)
angles = st.floats(0, 2 * np.pi, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(zero_lists, angles)
def test_preimage_fan_invariants(zeros, theta):
    B = make_canonical(zeros)
    fan = preimages(B, np.exp(1j * theta))
    assert fan.degree == len(zeros) + 1
    assert np.abs(np.abs(fan.points) - 1).max() < 1e-9
    assert abs(fan.residues.sum() - 1) < 1e-9
    assert np.all(fan.residues.real > 0)


@settings(max_examples=40, deadline=None)
@given(zero_lists, st.lists(angles, min_size=1, max_size=4))
def test_exterior_samples_on_curve(zeros, thetas):
    B = make_canonical(zeros)
    P = exterior_equation(B)
    assert P.is_hermitian()
    pts = exterior_samples(B, thetas, track=False).finite_points()
    if pts.size:
        assert P.normalized_residual(pts).max() < 1e-7


@settings(max_examples=40, deadline=None)
@given(st.lists(disk_point, min_size=2, max_size=5), angles)
def test_siebeck_independent_of_lambda(zeros, theta):
    B = make_canonical(zeros)
    fan = preimages(B, np.exp(1j * theta))
    foci = siebeck_foci(fan.points, fan.residues)
    # compare symmetric functions: clustered zeros make the roots themselves ill-conditioned
    assert np.abs(np.poly(foci) - np.poly(zeros)).max() < 1e-9


@given(st.floats(0.01, 50), angles)
def test_polar_round_trip(r, t):
    z = r * np.exp(1j * t)
    assert abs(polar_to_pole(pole_to_polar(z)) - z) < 1e-11 * r


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_complex_text_round_trip(c):
    assert parse_complex(format_complex(c, 17)) == c
