import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mosg import polariton
from mosg.analytic import exit_centers_magnetic
from mosg.errors import WrongMode, ZeroControlField
from mosg.model import derive
from mosg.validation import magnetic_reference, optical_reference


def test_mixing_angle_examples():
    assert polariton.mixing_angle(1.0, 1.0, 1.0) == pytest.approx(math.pi / 4, abs=1e-15)
    theta = polariton.mixing_angle(0.0, 5.0, 2.0)
    assert theta == 0.0 and polariton.group_velocity(theta, 3.0) == 3.0
    theta = polariton.mixing_angle(math.sqrt(3.0), 1.0, 1.0)
    assert math.cos(theta) ** 2 == pytest.approx(0.25)
    assert polariton.group_velocity(theta) == pytest.approx(0.25)
    with pytest.raises(ZeroControlField):
        polariton.mixing_angle(1.0, 1.0, 0.0)


def test_limits_of_rotation():
    e = np.array([1.0, 2j])
    s = np.array([0.5, -1.0])
    pair = polariton.to_polaritons(e, s, 0.0, n_atoms=4.0)
    np.testing.assert_array_equal(pair.dark, e)
    np.testing.assert_array_equal(pair.bright, 4.0 * s)
    pair = polariton.to_polaritons(e, s, math.pi / 2, n_atoms=4.0)
    np.testing.assert_allclose(pair.dark, -4.0 * s, atol=1e-15)


def test_zero_pair_and_identity():
    z = polariton.PolaritonPair(np.zeros(3, complex), np.zeros(3, complex))
    e, s = polariton.from_polaritons(z, 0.7)
    assert not e.any() and not s.any()
    pair = polariton.PolaritonPair(np.array([1 + 1j, 2.0]), np.array([0.0, 3.0]))
    e, _ = polariton.from_polaritons(pair, 0.0)
    np.testing.assert_array_equal(e, pair.dark)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        polariton.to_polaritons(np.zeros(3), np.zeros(4), 0.1)


profiles = st.integers(1, 64).flatmap(
    lambda n: st.tuples(
        st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=n, max_size=n),
        st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=n, max_size=n),
    )
)


@settings(max_examples=100)
@given(profiles, st.floats(0, math.pi / 2), st.floats(0.1, 100))
def test_round_trip_and_norm(prof, theta, n):
    e, s = (np.array(p, dtype=complex) for p in prof)
    pair = polariton.to_polaritons(e, s, theta, n)
    e2, s2 = polariton.from_polaritons(pair, theta, n)
    scale = max(1.0, float(np.max(np.abs(e))), float(np.max(np.abs(s))) * 2 * math.sqrt(n))
    np.testing.assert_allclose(e2, e, rtol=0, atol=1e-14 * scale)
    np.testing.assert_allclose(s2, s, rtol=0, atol=1e-14 * scale / math.sqrt(n))
    before = np.abs(e) ** 2 + 4 * n * np.abs(s) ** 2
    after = np.abs(pair.dark) ** 2 + np.abs(pair.bright) ** 2
    np.testing.assert_allclose(after, before, rtol=1e-14, atol=1e-14 * scale**2)


def test_adiabatic_coherence_empties_bright_field():
    g, n, omega = 1.3, 2.0, 0.7
    theta = polariton.mixing_angle(g, n, omega)
    e = np.exp(-np.linspace(-3, 3, 31) ** 2)
    s = polariton.adiabatic_spin_coherence(e, g, omega)
    pair = polariton.to_polaritons(e, s, theta, n)
    assert np.max(np.abs(pair.bright)) < 1e-14
    # the dark field carries all of |E|^2 + 4N|sigma|^2
    np.testing.assert_allclose(np.abs(pair.dark) ** 2, np.abs(e) ** 2 + 4 * n * np.abs(s) ** 2, rtol=1e-14)


def test_dsp_kinematics_examples():
    s = magnetic_reference()
    k = polariton.dsp_kinematics(s, derive(s))
    assert k.deflection == pytest.approx((-0.02, 0.02), rel=1e-14)
    assert k.exit_centers == pytest.approx(exit_centers_magnetic(s, derive(s)), rel=1e-14)
    flat = s.replace(b1=0.0)
    kf = polariton.dsp_kinematics(flat, derive(flat))
    assert kf.v_transverse == (0.0, 0.0) and kf.deflection == (0.0, 0.0)
    sym = s.replace(mu=(-0.4, 0.4, 0.2, 0.0))
    ks = polariton.dsp_kinematics(sym, derive(sym))
    assert ks.deflection[0] == -ks.deflection[1]
    with pytest.raises(WrongMode):
        polariton.dsp_kinematics(optical_reference(), derive(optical_reference()))
