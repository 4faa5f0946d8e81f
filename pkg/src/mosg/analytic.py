"""Closed-form Gaussian packets in linear potentials, and exit-centre formulas.

For U(x) = offset + slope * x and a unit-normalized initial packet
(pi b^2)^(-1/4) exp(-(x - a)^2 / (2 b^2)), the solution is the freely spreading
Gaussian translated along the classical trajectory and boosted:

    psi(x, t) = exp(i (p x + theta)) * phi_free(x - d(t), t)
    d(t) = -slope t^2 / (2 m),  p(t) = -slope t,
    theta(t) = -offset t - slope^2 t^3 / (6 m).

The force on the packet is -slope, so a component with slope < 0 drifts to +x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import WrongMode
from .model import DerivedParams, Mode, Scenario


@dataclass(frozen=True)
class GaussianPacketState:
    component: int
    t: float
    center: float
    complex_width: complex
    phase_linear: float
    phase_const: float
    z_center: float
    width0: float
    mass: float

    @property
    def intensity_width2(self) -> float:
        """W^2 in |psi|^2 ~ exp(-(x - center)^2 / W^2)."""
        return abs(self.complex_width) ** 2 / self.width0**2

    @property
    def rms_width(self) -> float:
        return math.sqrt(0.5 * self.intensity_width2)

    @property
    def peak_intensity(self) -> float:
        return self.width0 / (math.sqrt(math.pi) * abs(self.complex_width))

    def field(self, x):
        x = np.asarray(x, dtype=float)
        w = self.complex_width
        b2 = self.width0**2
        pref = (math.pi * b2) ** -0.25 * np.sqrt(b2 / w)
        y = x - self.center
        return pref * np.exp(-(y * y) / (2.0 * w) + 1j * (self.phase_linear * x + self.phase_const))


def evolve_linear_potential(j: int, offset: float, slope: float, scenario: Scenario, t: float) -> GaussianPacketState:
    if t < 0:
        raise ValueError("t must be >= 0")
    m = scenario.k_probe / scenario.c_light
    b = scenario.probe_b
    return GaussianPacketState(
        component=j,
        t=t,
        center=scenario.probe_a - slope * t * t / (2.0 * m),
        complex_width=complex(b * b, t / m),
        phase_linear=-slope * t,
        phase_const=-offset * t - slope * slope * t**3 / (6.0 * m),
        z_center=scenario.c_light * t,
        width0=b,
        mass=m,
    )


def exit_centers_magnetic(scenario: Scenario, params: DerivedParams) -> Tuple[float, float]:
    """Transverse centres at z = L in a linear magnetic field.

    x_j = a + chi_j B1 N g^2 L^2 / (2 Omega^2 k c); the probe is usually
    launched on axis (a = 0).
    """
    if scenario.mode is not Mode.MAGNETIC:
        raise WrongMode(f"exit_centers_magnetic needs MagneticGradient mode, got {scenario.mode.value}")
    s = scenario
    g2n = s.coupling_g**2 * s.atom_number
    k = s.k_probe
    return tuple(
        s.probe_a + chi * s.b1 * g2n * s.medium_length**2 / (2.0 * s.omega0**2 * k * s.c_light)
        for chi in params.chi
    )


def exit_centers_optical(scenario: Scenario, params: DerivedParams) -> Tuple[float, float]:
    """Transverse centres at z = L for the Gaussian control beam, linearized about a."""
    if scenario.mode is not Mode.OPTICAL:
        raise WrongMode(f"exit_centers_optical needs OpticalGradient mode, got {scenario.mode.value}")
    s = scenario
    a, sig = s.probe_a, s.sigma_ctrl
    g2n = s.coupling_g**2 * s.atom_number
    out = []
    for j, chi in enumerate(params.chi):
        # chi_j B generalizes to the full detuning mismatch when bare detunings differ.
        mismatch = chi * s.b0 - (s.bare_detunings[2] - s.bare_detunings[j])
        shift = a * mismatch * math.exp(a * a / sig**2) * g2n * s.medium_length**2 / (s.omega0**2 * sig**2 * s.k_probe * s.c_light)
        out.append(a + shift)
    return tuple(out)


def exit_centers(scenario: Scenario, params: DerivedParams) -> Tuple[float, float]:
    """Mode dispatch; Uniform mode leaves both components at a."""
    if scenario.mode is Mode.MAGNETIC:
        return exit_centers_magnetic(scenario, params)
    if scenario.mode is Mode.OPTICAL:
        return exit_centers_optical(scenario, params)
    return (scenario.probe_a, scenario.probe_a)


def trajectory_rows(scenario: Scenario, pots, times):
    """(t, center_1, center_2, width_1, width_2, peak_1, peak_2) per time, linearized potentials."""
    rows = []
    for t in times:
        st = [evolve_linear_potential(j, pots.lin_offset[j - 1], pots.lin_slope[j - 1], scenario, t) for j in (1, 2)]
        rows.append((t, st[0].center, st[1].center, st[0].rms_width, st[1].rms_width, st[0].peak_intensity, st[1].peak_intensity))
    return rows
