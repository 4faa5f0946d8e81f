import math
import warnings

import numpy as np
import pytest

from mosg import analytic, spectral
from mosg.errors import AccuracyWarning, GridError, PacketOutsideGrid, WraparoundError, ZeroNorm
from mosg.hamiltonian import PotentialPair, build_potentials
from mosg.model import Mode, Scenario, derive


def free_scenario(**kw):
    base = dict(
        mode=Mode.UNIFORM, coupling_g=1.0, atom_number=1.0, gamma_excited=1.0, mu=(-1.0, 1.0, 0.0, 0.0),
        omega0=1.0, k_probe=1.0, probe_b=1.0, medium_length=2.0,
    )
    base.update(kw)
    return Scenario(**base)


def norms(state):
    return [o.norm for o in spectral.observables(state)]


def test_grid_validation():
    with pytest.raises(GridError):
        spectral.Grid1D(100, 10.0)
    with pytest.raises(GridError):
        spectral.Grid1D(32, 10.0)
    with pytest.raises(GridError):
        spectral.Grid1D(128, 0.0)
    with pytest.raises(GridError):
        spectral.check_grid(spectral.Grid1D(64, 20.0), b=1.0)
    spectral.check_grid(spectral.Grid1D(1024, 20.0), b=1.0)
    with pytest.raises(GridError):
        spectral.check_grid(spectral.Grid1D(1024, 20.0), b=1.0, max_momentum=200.0)


def test_grid_geometry():
    g = spectral.Grid1D(64, 8.0)
    assert g.dx == 0.25
    assert g.x[0] == -8.0 and g.x[-1] == pytest.approx(8.0 - 0.25)
    assert g.k_nyquist == pytest.approx(math.pi / 0.25)


def test_init_gaussian_examples():
    grid = spectral.Grid1D(1024, 16.0)
    st = spectral.init_gaussian(grid, 0.0, 1.0)
    o1, o2 = spectral.observables(st)
    assert o1.norm == pytest.approx(1.0, abs=1e-12) and o2.norm == pytest.approx(1.0, abs=1e-12)
    assert abs(o1.center) < 1e-12
    single = spectral.init_gaussian(grid, 0.0, 1.0, (1.0, 0.0))
    assert not single.e2.any()
    assert spectral.observables(single)[1].norm == 0.0
    with pytest.raises(PacketOutsideGrid):
        spectral.init_gaussian(grid, 13.0, 1.0)


def test_moments_of_fresh_packet():
    grid = spectral.Grid1D(1024, 16.0)
    o1, _ = spectral.observables(spectral.init_gaussian(grid, 0.5, 1.0))
    assert o1.center == pytest.approx(0.5, abs=1e-10)
    assert o1.width == pytest.approx(1 / math.sqrt(2), abs=1e-10)


def test_empty_component_is_absent():
    grid = spectral.Grid1D(256, 16.0)
    st = spectral.init_gaussian(grid, 0.0, 1.0, (1.0, 0.0))
    o2 = spectral.observables(st)[1]
    assert o2.center is None and o2.width is None and o2.peak_position is None
    with pytest.raises(ZeroNorm):
        o2.require_center()
    row = spectral.trajectory_row(st)
    assert math.isnan(row[2]) and row[6] == 0.0


def test_free_step_is_exact():
    s = free_scenario()
    grid = spectral.Grid1D(1024, 20.0)
    pots = PotentialPair(s, (0.0, 0.0), (0.0, 0.0))
    st = spectral.step(spectral.init_gaussian(grid, 0.0, 1.0), pots, True, 0.5)
    exact = analytic.evolve_linear_potential(1, 0.0, 0.0, s, 0.5).field(grid.x)
    assert spectral.l2_distance(grid, st.e1, exact) < 1e-12
    assert st.t == 0.5 and st.z_offset == 0.5


def test_zero_time_is_identity(magnetic):
    grid = spectral.default_grid(magnetic)
    init = spectral.init_gaussian(grid, 0.0, 1.0)
    final, snaps = spectral.propagate(init, magnetic, 0.0)
    assert snaps == []
    assert np.array_equal(final.e1, init.e1) and np.array_equal(final.e2, init.e2)


def test_linear_potential_center_after_1000_steps(magnetic):
    p = derive(magnetic)
    grid = spectral.default_grid(magnetic, p)
    pots = build_potentials(magnetic, p, grid.x)
    final, _ = spectral.propagate(spectral.init_gaussian(grid, 0.0, 1.0), magnetic, 2.0, 2e-3, (), pots)
    for j, o in enumerate(spectral.observables(final), 1):
        packet = analytic.evolve_linear_potential(j, pots.lin_offset[j - 1], pots.lin_slope[j - 1], magnetic, 2.0)
        assert abs(o.center - packet.center) < 1e-6
    centers = analytic.exit_centers_magnetic(magnetic, p)
    assert [o.center for o in spectral.observables(final)] == pytest.approx(centers, abs=1e-6)


def test_symmetric_snapshots(magnetic):
    s = magnetic.replace(medium_length=3.0)
    grid = spectral.default_grid(s)
    init = spectral.init_gaussian(grid, 0.0, 1.0)
    final, snaps = spectral.propagate(init, s, 3.0, 1e-3, [0.0, 1.0, 2.0])
    states = snaps + [final]
    assert [st.t for st in states] == [0.0, 1.0, 2.0, 3.0]
    seps = []
    for st in states:
        o1, o2 = spectral.observables(st)
        assert abs(o1.center + o2.center) < 1e-8
        seps.append(o2.center - o1.center)
    assert all(b > a for a, b in zip(seps, seps[1:]))


def test_norm_conserved_over_1000_steps(optical):
    p = derive(optical)
    grid = spectral.default_grid(optical, p)
    pots = build_potentials(optical, p, grid.x)
    init = spectral.init_gaussian(grid, optical.probe_a, optical.probe_b)
    final, _ = spectral.propagate(init, optical, 1.0, 1e-3, (), pots)
    assert max(abs(a - b) for a, b in zip(norms(final), norms(init))) < 1e-12


def test_strang_second_order(optical):
    p = derive(optical)
    grid = spectral.default_grid(optical, p)
    pots = build_potentials(optical, p, grid.x)
    init = spectral.init_gaussian(grid, optical.probe_a, optical.probe_b)
    run = lambda dt: spectral.propagate(init, optical, 1.0, dt, (), pots)[0].e1
    ref = run(0.05 / 16)
    e1 = spectral.l2_distance(grid, run(0.1), ref)
    e2 = spectral.l2_distance(grid, run(0.05), ref)
    assert 1.9 < math.log2(e1 / e2) < 2.1


def test_ehrenfest_on_exact_optical_potential(optical):
    """d^2<x>/dt^2 = -<dU/dx>/m for the nonlinear potential."""
    p = derive(optical)
    grid = spectral.default_grid(optical, p)
    pots = build_potentials(optical, p, grid.x)
    init = spectral.init_gaussian(grid, optical.probe_a, optical.probe_b)
    h = 0.05
    final, snaps = spectral.propagate(init, optical, 2.0 + h, 1e-3, [2.0 - h, 2.0], pots)
    x, dx = grid.x, grid.dx
    for j in (1, 2):
        c = [spectral.observables(st)[j - 1].center for st in (snaps[0], snaps[1], final)]
        accel = (c[0] - 2 * c[1] + c[2]) / h**2
        rho = np.abs(snaps[1].component(j)) ** 2
        force = -np.sum(rho * np.gradient(pots.exact_u(x, j), dx)) * dx
        assert abs(accel - force / p.eff_mass) < 1e-4


def test_components_evolve_independently(optical):
    grid = spectral.default_grid(optical)
    both = spectral.init_gaussian(grid, optical.probe_a, optical.probe_b)
    only1 = spectral.init_gaussian(grid, optical.probe_a, optical.probe_b, (1.0, 0.0))
    f_both, _ = spectral.propagate(both, optical, 0.5)
    f_one, _ = spectral.propagate(only1, optical, 0.5)
    assert np.array_equal(f_both.e1, f_one.e1)
    assert not f_one.e2.any()


def test_wraparound_guard():
    s = free_scenario(k_probe=0.05)
    grid = spectral.Grid1D(256, 8.0)
    init = spectral.init_gaussian(grid, 0.0, 1.0)
    with pytest.raises(WraparoundError):
        spectral.propagate(init, s, 2.0, 1e-2)
    final, _ = spectral.propagate(init, s, 2.0, 1e-2, guard=False)
    assert final.t == 2.0


def test_accuracy_warning(optical):
    grid = spectral.default_grid(optical)
    init = spectral.init_gaussian(grid, optical.probe_a, optical.probe_b)
    with pytest.warns(AccuracyWarning):
        spectral.propagate(init, optical, 1.0, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        spectral.propagate(init, optical, 0.01, 1e-3)


def test_bad_arguments(magnetic):
    grid = spectral.default_grid(magnetic)
    init = spectral.init_gaussian(grid, 0.0, 1.0)
    with pytest.raises(ValueError):
        spectral.propagate(init, magnetic, -1.0)
    with pytest.raises(ValueError):
        spectral.propagate(init, magnetic, 1.0, 1e-3, [0.5, 0.2])
    with pytest.raises(ValueError):
        spectral.propagate(init, magnetic, 1.0, 1e-3, [2.0])
