"""Cross-checks between independent routes to the same prediction.

Each suite returns a list of :class:`Check` records; ``run_suites`` drives the
``validate`` subcommand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List

from . import analytic, atomic, polariton, spectral
from .hamiltonian import build_potentials, linearization_discrepancy
from .model import Mode, Scenario, derive


@dataclass(frozen=True)
class Check:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.error < self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} error={self.error:.3e} tol={self.tolerance:.1e}"


def magnetic_reference(**changes) -> Scenario:
    """Symmetric magnetic case: m = 10, b = 1, chi = (-1, 1), zeta = 0.1, exit at t = 2."""
    base = dict(
        mode=Mode.MAGNETIC, coupling_g=1.0, atom_number=1.0, gamma_excited=1.0,
        mu=(-1.0, 1.0, 0.0, 0.0), omega0=1.0, k_probe=10.0, probe_b=1.0,
        medium_length=2.0, b1=0.1,
    )
    base.update(changes)
    return Scenario(**base)


def optical_reference(**changes) -> Scenario:
    """Gaussian control beam with b = sigma/8 and the probe launched at a = sigma/2."""
    base = dict(
        mode=Mode.OPTICAL, coupling_g=1.0, atom_number=1.0, gamma_excited=1.0,
        mu=(-1.0, 1.0, 0.0, 0.0), omega0=1.0, k_probe=40.0, probe_b=1.0,
        medium_length=4.0, b0=1.0, sigma_ctrl=8.0, probe_a=4.0,
    )
    base.update(changes)
    return Scenario(**base)


def response_reference() -> Scenario:
    return Scenario(
        mode=Mode.UNIFORM, coupling_g=1.0, atom_number=1.0, gamma_excited=1.0,
        mu=(-1.0, 1.0, 0.0, 0.0), omega0=2.0, k_probe=10.0, probe_b=1.0,
        medium_length=1.0, b0=0.3,
    )


def leading_order_gap(det: atomic.Detunings, j: int, gamma: float, omega: float) -> float:
    """|exact/leading - 1| for sigma_j3 at gamma_ground = 0.

    Solving the stationary 2x2 block exactly gives
    exact = leading / (1 - eps), eps = (delta_j + i Gamma)(delta_j - delta_c) / |Omega|^2.
    """
    eps = complex(det.probe(j), gamma) * (det.probe(j) - det.dc) / abs(omega) ** 2
    return abs(eps / (1.0 - eps))


def converged_response(scenario: Scenario, det: atomic.Detunings, e1=1.0, e2=1.0, omega=None, settle: float = 200.0):
    """Integrate the first-order coherences for ``settle / Gamma`` from rest."""
    dt = atomic.default_step(scenario, det, omega)
    return atomic.integrate_first_order(
        atomic.CoherenceState(), scenario, det, e1, e2, dt, settle / scenario.gamma_excited, omega
    )


def suite_response() -> List[Check]:
    s = response_reference()
    det = atomic.detunings_at(s, 0.0)
    ode = converged_response(s, det)
    fixed = atomic.stationary_coherences(s, det, 1.0, 1.0)
    out = []
    for j, (a, b) in enumerate(((ode.s13, fixed.s13), (ode.s23, fixed.s23)), 1):
        out.append(Check(f"response.ode_vs_stationary_j{j}", abs(a - b) / abs(b), 1e-6))
        closed = atomic.steady_state_coherence(j, det, s.omega0, s.coupling_g, 1.0)
        gap = abs(a / closed - 1.0)
        bound = leading_order_gap(det, j, s.gamma_excited, s.omega0)
        out.append(Check(f"response.closed_form_leading_order_j{j}", abs(gap - bound), 1e-6 * max(bound, 1.0)))
    return out


def suite_linear(dt: float = 1e-3, n_points: int = 2048) -> List[Check]:
    s = magnetic_reference()
    p = derive(s)
    grid = spectral.default_grid(s, p, n_points=n_points)
    pots = build_potentials(s, p, grid.x)
    times = [0.5, 1.0, 2.0]
    init = spectral.init_gaussian(grid, s.probe_a, s.probe_b)
    final, snaps = spectral.propagate(init, s, s.transit_time, dt, times, pots)
    worst = 0.0
    for snap in snaps:
        for j in (1, 2):
            packet = analytic.evolve_linear_potential(j, pots.lin_offset[j - 1], pots.lin_slope[j - 1], s, snap.t)
            worst = max(worst, spectral.l2_distance(grid, snap.component(j), packet.field(grid.x)))
    predicted = analytic.exit_centers_magnetic(s, p)
    obs = spectral.observables(final)
    center_err = max(abs(o.require_center() - x) for o, x in zip(obs, predicted))
    return [
        Check("linear.l2_spectral_vs_closed_form", worst, 1e-6),
        Check("linear.exit_centers_vs_formula", center_err, 1e-6),
    ]


def optical_exit_comparison(s: Scenario, dt: float = 1e-3, n_points: int = 2048):
    """(numeric centres, formula centres, linearization diagnostic) for one optical scenario."""
    p = derive(s)
    grid = spectral.default_grid(s, p, n_points=n_points)
    pots = build_potentials(s, p, grid.x)
    init = spectral.init_gaussian(grid, s.probe_a, s.probe_b)
    final, _ = spectral.propagate(init, s, s.transit_time, dt, (), pots)
    numeric = tuple(o.require_center() for o in spectral.observables(final))
    return numeric, analytic.exit_centers_optical(s, p), linearization_discrepancy(pots, s.probe_a, s.probe_b)


def suite_optical(dt: float = 1e-3, n_points: int = 2048) -> List[Check]:
    s = optical_reference()
    numeric, formula, diag = optical_exit_comparison(s, dt, n_points)
    a = s.probe_a
    rel = max(abs((n - a) / (f - a) - 1.0) for n, f in zip(numeric, formula))
    return [
        Check("optical.exit_shift_vs_linearized_formula", rel, diag),
        Check("optical.exit_shift_within_5pct", rel, 0.05),
    ]


def suite_polariton() -> List[Check]:
    s = magnetic_reference()
    p = derive(s)
    kin = polariton.dsp_kinematics(s, p)
    field_pic = analytic.exit_centers_magnetic(s, p)
    rel_c = max(abs(k - f) / abs(f) for k, f in zip(kin.exit_centers, field_pic))
    h = 1e-3 * s.medium_length
    up = analytic.exit_centers_magnetic(s.replace(medium_length=s.medium_length + h), p)
    dn = analytic.exit_centers_magnetic(s.replace(medium_length=s.medium_length - h), p)
    rel_d = max(abs((u - d) / (2 * h) - a) / abs(a) for u, d, a in zip(up, dn, kin.deflection))
    theta = polariton.mixing_angle(1.0, 1.0, 1.0)
    return [
        Check("polariton.dsp_centers_vs_field_picture", rel_c, 1e-12),
        Check("polariton.deflection_vs_dxdL", rel_d, 1e-10),
        Check("polariton.theta_quarter_pi", abs(theta - math.pi / 4), 1e-14),
    ]


SUITES: Dict[str, Callable[[], List[Check]]] = {
    "response": suite_response,
    "linear": suite_linear,
    "optical": suite_optical,
    "polariton": suite_polariton,
}


def run_suites(name: str) -> List[Check]:
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for n in names:
        checks.extend(SUITES[n]())
    return checks
