"""Transverse potentials of the two-component probe equation.

Each circular component j sees

    U_j(x) = |g|^2 N (delta_c(x) - delta_j(x)) / |Omega(x)|^2,

which splits into a spin-independent part V(x) = (U_1 + U_2)/2 and a
spin-dependent coupling muB(x) = U_2 - U_1 = (delta_1 - delta_2) tan^2 theta(x).
The linearized forms expand U_j to first order about the probe centre a.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ControlFieldUnderflow
from .model import DerivedParams, Mode, Scenario, control_rabi, detuning_triplet

# Grid half-width limit in OpticalGradient mode, in units of sigma_ctrl.
MAX_OPTICAL_HALF_WIDTH = 4.0


@dataclass(frozen=True)
class PotentialPair:
    scenario: Scenario
    lin_offset: Tuple[float, float]
    lin_slope: Tuple[float, float]

    def tan2_theta_at(self, x):
        s = self.scenario
        om = control_rabi(s, x)
        om2 = om * om
        if np.any(om2 == 0.0):
            raise ControlFieldUnderflow("control field underflows to zero; potential diverges")
        return s.coupling_g**2 * s.atom_number / om2

    def exact_u(self, x, j: int):
        d1, d2, dc = detuning_triplet(self.scenario, x)
        dj = d1 if j == 1 else d2
        return (dc - dj) * self.tan2_theta_at(x)

    def linear_u(self, x, j: int):
        x = np.asarray(x, dtype=float)
        return self.lin_offset[j - 1] + self.lin_slope[j - 1] * x

    def u(self, x, j: int, exact: bool = True):
        return self.exact_u(x, j) if exact else self.linear_u(x, j)

    def scalar_v_at(self, x):
        d1, d2, dc = detuning_triplet(self.scenario, x)
        return (dc - 0.5 * (d1 + d2)) * self.tan2_theta_at(x)

    def spin_coupling_at(self, x):
        d1, d2, _ = detuning_triplet(self.scenario, x)
        return (d1 - d2) * self.tan2_theta_at(x)


def check_optical_grid(scenario: Scenario, x) -> None:
    """Refuse grids on which the exact optical potential cannot be trusted."""
    if scenario.mode is not Mode.OPTICAL:
        return
    x = np.asarray(x, dtype=float)
    reach = float(np.max(np.abs(x)))
    if reach > MAX_OPTICAL_HALF_WIDTH * scenario.sigma_ctrl * (1 + 1e-12):
        raise ControlFieldUnderflow(
            f"grid reaches |x| = {reach:.6g} > {MAX_OPTICAL_HALF_WIDTH:g} sigma_ctrl = "
            f"{MAX_OPTICAL_HALF_WIDTH * scenario.sigma_ctrl:.6g}"
        )
    if np.any(control_rabi(scenario, x) == 0.0):
        raise ControlFieldUnderflow("control field underflows to zero on the grid")


def build_potentials(scenario: Scenario, params: DerivedParams, x=None) -> PotentialPair:
    """Exact and linearized potentials. Pass the grid ``x`` to run the divergence guard."""
    if x is not None:
        check_optical_grid(scenario, x)
    a = scenario.probe_a
    # Exact Taylor form U(a) + U'(a)(x - a), written as offset + slope * x.
    offset = tuple(params.eta0[j] - params.eta1[j] * a for j in range(2))
    return PotentialPair(scenario=scenario, lin_offset=offset, lin_slope=tuple(params.eta1))


def kinetic_params(params: DerivedParams) -> Tuple[float, float]:
    """(transverse mass, longitudinal advection speed) = (k/c, c)."""
    c = params.scenario.c_light
    return params.scenario.k_probe / c, c


def linearization_discrepancy(pots: PotentialPair, a: float, b: float, n: int = 601) -> float:
    """Worst relative gap between exact and linearized U_j over [a - 3b, a + 3b].

    The gap is normalized by the largest |U_j| on the same interval. Returns 0
    for a component whose potential vanishes identically.
    """
    x = np.linspace(a - 3.0 * b, a + 3.0 * b, n)
    worst = 0.0
    for j in (1, 2):
        ex = pots.exact_u(x, j)
        scale = np.max(np.abs(ex))
        if scale == 0.0:
            continue
        worst = max(worst, float(np.max(np.abs(ex - pots.linear_u(x, j))) / scale))
    return worst
