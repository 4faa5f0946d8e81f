import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mosg import analytic, spectral
from mosg.errors import WrongMode
from mosg.hamiltonian import PotentialPair
from mosg.model import Mode, Scenario, derive


def uniform(**kw):
    base = dict(
        mode=Mode.UNIFORM, coupling_g=1.0, atom_number=1.0, gamma_excited=1.0, mu=(-1.0, 1.0, 0.0, 0.0),
        omega0=1.0, k_probe=1.0, probe_b=1.0, medium_length=2.0,
    )
    base.update(kw)
    return Scenario(**base)


def test_free_packet_only_spreads():
    s = uniform(probe_a=0.7)
    for t in (0.0, 0.5, 3.0):
        p = analytic.evolve_linear_potential(1, 0.0, 0.0, s, t)
        assert p.center == 0.7 and p.phase_linear == 0
        assert p.intensity_width2 == pytest.approx(1.0 + t * t)


def test_linear_potential_center_matches_spectral():
    s = uniform()
    grid = spectral.Grid1D(1024, 20.0)
    pots = PotentialPair(s, lin_offset=(0.0, 0.0), lin_slope=(-0.2, 0.2))
    init = spectral.init_gaussian(grid, 0.0, 1.0)
    final, _ = spectral.propagate(init, s, 2.0, 1e-3, (), pots, use_exact=False)
    obs = spectral.observables(final)
    packet = analytic.evolve_linear_potential(1, 0.0, -0.2, s, 2.0)
    assert packet.center == pytest.approx(0.4, abs=1e-15)
    assert abs(obs[0].center - 0.4) < 1e-6
    assert abs(obs[1].center + 0.4) < 1e-6
    assert spectral.l2_distance(grid, final.e1, packet.field(grid.x)) < 1e-6


def test_odd_symmetry_of_opposite_forces():
    s = uniform()
    for t in np.linspace(0, 4, 9):
        c1 = analytic.evolve_linear_potential(1, 0.0, 0.3, s, t).center
        c2 = analytic.evolve_linear_potential(2, 0.0, -0.3, s, t).center
        assert c1 == -c2


@settings(max_examples=50)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.2, 3), st.floats(0.3, 5), st.floats(-2, 2))
def test_center_is_ballistic_and_norm_preserved(offset, slope, b, m, a):
    s = uniform(probe_b=b, k_probe=m, probe_a=a)
    times = np.linspace(0, 3, 7)
    centers = np.array([analytic.evolve_linear_potential(1, offset, slope, s, t).center for t in times])
    expected = a - slope * times**2 / (2 * m)
    assert np.max(np.abs(centers - expected)) < 1e-10
    p = analytic.evolve_linear_potential(1, offset, slope, s, 3.0)
    # width law and normalization by quadrature around the packet
    assert p.intensity_width2 == pytest.approx(b * b + 9.0 / (m * m * b * b), rel=1e-12)
    half = 12 * math.sqrt(p.intensity_width2)
    x = np.linspace(p.center - half, p.center + half, 20001)
    rho = np.abs(p.field(x)) ** 2
    assert np.sum(rho) * (x[1] - x[0]) == pytest.approx(1.0, abs=1e-9)
    assert np.max(rho) == pytest.approx(p.peak_intensity, rel=1e-6)


def test_exit_centers_magnetic_examples(magnetic):
    p = derive(magnetic)
    assert analytic.exit_centers_magnetic(magnetic, p) == pytest.approx((-0.02, 0.02), abs=1e-15)
    flat = magnetic.replace(b1=0.0)
    assert analytic.exit_centers_magnetic(flat, derive(flat)) == (0.0, 0.0)
    asym = magnetic.replace(mu=(-0.3, 0.3, 0.5, 0.0))
    x1, x2 = analytic.exit_centers_magnetic(asym, derive(asym))
    assert x1 == -x2


def test_exit_centers_agree_with_packet(magnetic):
    from mosg.hamiltonian import build_potentials

    for s in (magnetic, magnetic.replace(probe_a=0.5, b0=0.2, mu=(-2.0, -0.5, 0.1, 0.3))):
        p = derive(s)
        pots = build_potentials(s, p)
        closed = analytic.exit_centers_magnetic(s, p)
        for j in (1, 2):
            c = analytic.evolve_linear_potential(j, pots.lin_offset[j - 1], pots.lin_slope[j - 1], s, s.transit_time).center
            assert c == pytest.approx(closed[j - 1], abs=1e-12)


def test_exit_centers_optical_examples():
    s = Scenario(
        mode=Mode.OPTICAL, coupling_g=1, atom_number=1, gamma_excited=1, mu=(-1, 1, 0, 0),
        omega0=1, k_probe=10, probe_b=0.25, medium_length=1, b0=0.5, sigma_ctrl=2, probe_a=1,
    )
    x1, x2 = analytic.exit_centers_optical(s, derive(s))
    shift = 0.5 * math.exp(0.25) / 40
    assert (x1 - 1, x2 - 1) == pytest.approx((-shift, shift), rel=1e-14)
    on_axis = s.replace(probe_a=0.0)
    assert analytic.exit_centers_optical(on_axis, derive(on_axis)) == (0.0, 0.0)
    no_field = s.replace(b0=0.0)
    assert analytic.exit_centers_optical(no_field, derive(no_field)) == (1.0, 1.0)


def test_optical_formula_equals_linear_packet(optical):
    from mosg.hamiltonian import build_potentials

    p = derive(optical)
    pots = build_potentials(optical, p)
    closed = analytic.exit_centers_optical(optical, p)
    for j in (1, 2):
        c = analytic.evolve_linear_potential(j, pots.lin_offset[j - 1], pots.lin_slope[j - 1], optical, optical.transit_time).center
        assert c == pytest.approx(closed[j - 1], rel=1e-12)


def test_mode_dispatch(magnetic, optical):
    with pytest.raises(WrongMode):
        analytic.exit_centers_optical(magnetic, derive(magnetic))
    with pytest.raises(WrongMode):
        analytic.exit_centers_magnetic(optical, derive(optical))
    u = uniform(probe_a=1.5)
    assert analytic.exit_centers(u, derive(u)) == (1.5, 1.5)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        analytic.evolve_linear_potential(1, 0.0, 0.0, uniform(), -1.0)
