"""Zeeman-shifted detunings and first-order atomic coherences.

The first-order equations for the coherences are a constant-coefficient linear
system when the probe amplitudes are frozen (adiabatic probe). Two routes to
its stationary value are provided: the closed-form EIT expression, valid to
leading order in the two-photon detuning, and direct RK4 integration of the
five ODEs, which serves as the independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import StepTooLarge, ZeroControlField
from .model import Scenario, detuning_triplet

STABILITY_LIMIT = 0.1


def zeeman_shift(mu_i: float, field_b: float) -> float:
    return mu_i * field_b


@dataclass(frozen=True)
class Detunings:
    d1: float
    d2: float
    dc: float

    def probe(self, j: int) -> float:
        return self.d1 if j == 1 else self.d2


def detunings_at(scenario: Scenario, x: float) -> Detunings:
    d1, d2, dc = detuning_triplet(scenario, x)
    return Detunings(float(d1), float(d2), float(dc))


def steady_state_coherence(j: int, det: Detunings, omega: complex, g: float, e_field: complex) -> complex:
    """Leading-order steady state of sigma_j3: g E_j (delta_j - delta_c) / (2 |Omega|^2)."""
    if j not in (1, 2):
        raise ValueError(f"component index must be 1 or 2, got {j}")
    om2 = abs(omega) ** 2
    if om2 == 0.0:
        raise ZeroControlField("steady state needs a nonzero control field")
    return g * e_field * (det.probe(j) - det.dc) / (2.0 * om2)


@dataclass(frozen=True)
class CoherenceState:
    s13: complex = 0j
    s14: complex = 0j
    s23: complex = 0j
    s24: complex = 0j
    s34: complex = 0j
    t: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.s13, self.s14, self.s23, self.s24, self.s34], dtype=np.complex128)

    @classmethod
    def from_array(cls, y, t: float = 0.0) -> "CoherenceState":
        return cls(*(complex(v) for v in y), t=t)


def first_order_system(scenario: Scenario, det: Detunings, e1: complex, e2: complex, omega=None):
    """Matrix ``a`` and drive ``f`` with d/dt y = a y + f, y = (s13, s14, s23, s24, s34).

    The source is (1/2) i g E_j: the zeroth-order populations of |1> and |2>
    are 1/2 each, which replaces the (sigma_jj - sigma_33) factor of the full
    Heisenberg equations.
    """
    om = complex(scenario.omega0 if omega is None else omega)
    g = scenario.coupling_g
    gam, gam_g = scenario.gamma_excited, scenario.gamma_ground
    a = np.zeros((5, 5), dtype=np.complex128)
    a[0, 0] = 1j * det.d1 - gam
    a[0, 1] = 1j * om
    a[1, 1] = 1j * (det.d1 - det.dc) - gam_g
    a[1, 0] = 1j * om.conjugate()
    a[2, 2] = 1j * det.d2 - gam
    a[2, 3] = 1j * om
    a[3, 3] = 1j * (det.d2 - det.dc) - gam_g
    a[3, 2] = 1j * om.conjugate()
    # sigma33 and sigma44 have no first-order part, so s34 only decays.
    a[4, 4] = -(1j * det.dc + gam)
    f = np.array([0.5j * g * e1, 0.0, 0.5j * g * e2, 0.0, 0.0], dtype=np.complex128)
    return a, f


def stationary_coherences(scenario: Scenario, det: Detunings, e1: complex, e2: complex, omega=None) -> CoherenceState:
    """Exact fixed point of the first-order system (linear solve)."""
    a, f = first_order_system(scenario, det, e1, e2, omega)
    return CoherenceState.from_array(np.linalg.solve(a, -f), t=math.inf)


def integrate_first_order(
    init: CoherenceState,
    scenario: Scenario,
    det: Detunings,
    e1: complex,
    e2: complex,
    dt: float,
    t_final: float,
    omega=None,
) -> CoherenceState:
    """Advance the five first-order coherence ODEs with fixed-step RK4.

    If ``t_final`` is not a multiple of ``dt`` the step is shrunk slightly so
    the last step lands on ``t_final`` exactly.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    om = abs(scenario.omega0 if omega is None else omega)
    rate = max(abs(det.d1), abs(det.d2), abs(det.dc)) + scenario.gamma_excited + om
    if dt * rate > STABILITY_LIMIT:
        raise StepTooLarge(f"dt*(|delta|max + Gamma + |Omega|) = {dt * rate:.3g} > {STABILITY_LIMIT}")
    n_steps = int(math.ceil(t_final / dt - 1e-9)) if t_final > 0 else 0
    if n_steps == 0:
        return CoherenceState.from_array(init.as_array(), t=init.t)
    h = t_final / n_steps
    a, f = first_order_system(scenario, det, e1, e2, omega)
    y = _kernels.rk4_linear(a, f, init.as_array(), h, n_steps)
    return CoherenceState.from_array(y, t=init.t + t_final)


def default_step(scenario: Scenario, det: Detunings, omega=None, safety: float = 0.5) -> float:
    """Largest step that respects the stability guard, times ``safety``."""
    om = abs(scenario.omega0 if omega is None else omega)
    rate = max(abs(det.d1), abs(det.d2), abs(det.dc)) + scenario.gamma_excited + om
    return safety * STABILITY_LIMIT / rate
