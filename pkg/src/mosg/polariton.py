"""Dark/bright polariton picture of the split.

The dark and bright fields are a rotation by the mixing angle theta of the
probe envelope E_j and the scaled spin coherence 2 sqrt(N) sigma_j4. Under EIT
the bright field stays (nearly) empty and the dark field moves with group
velocity v_g = c cos^2 theta, effective mass m_B = k / v_g and potential
-chi_j B(x) sin^2 theta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import WrongMode, ZeroControlField
from .model import DerivedParams, Mode, Scenario


def mixing_angle(g: float, n_atoms: float, omega: float) -> float:
    """theta with tan^2 theta = g^2 N / |Omega|^2, in [0, pi/2)."""
    if omega == 0:
        raise ZeroControlField("mixing angle undefined without a control field")
    return math.atan2(math.sqrt(g * g * n_atoms), abs(omega))


def group_velocity(theta: float, c: float = 1.0) -> float:
    return c * math.cos(theta) ** 2


@dataclass(frozen=True, eq=False)
class PolaritonPair:
    dark: np.ndarray
    bright: np.ndarray


def to_polaritons(e_j, sigma_j4, theta: float, n_atoms: float = 1.0) -> PolaritonPair:
    e = np.asarray(e_j, dtype=np.complex128)
    s = 2.0 * math.sqrt(n_atoms) * np.asarray(sigma_j4, dtype=np.complex128)
    if e.shape != s.shape:
        raise ValueError("field and coherence profiles must share a grid")
    c, sn = math.cos(theta), math.sin(theta)
    return PolaritonPair(dark=e * c - s * sn, bright=e * sn + s * c)


def from_polaritons(pair: PolaritonPair, theta: float, n_atoms: float = 1.0):
    """Inverse rotation: returns (E_j, sigma_j4)."""
    c, sn = math.cos(theta), math.sin(theta)
    e = pair.dark * c + pair.bright * sn
    sigma = (pair.bright * c - pair.dark * sn) / (2.0 * math.sqrt(n_atoms))
    return e, sigma


def adiabatic_spin_coherence(e_j, g: float, omega: complex):
    """sigma_j4 = -g E_j / (2 Omega): the coherence that leaves the bright field empty."""
    if omega == 0:
        raise ZeroControlField("no control field")
    return -g * np.asarray(e_j, dtype=np.complex128) / (2.0 * omega)


@dataclass(frozen=True)
class DspKinematics:
    theta: float
    mass_b: float
    v_group: float
    v_transverse: Tuple[float, float]
    deflection: Tuple[float, float]
    exit_centers: Tuple[float, float]


def dsp_kinematics(scenario: Scenario, params: DerivedParams) -> DspKinematics:
    """Transverse motion of the two dark polaritons in a linear magnetic field."""
    if scenario.mode is not Mode.MAGNETIC:
        raise WrongMode(f"dark-polariton kinematics need MagneticGradient mode, got {scenario.mode.value}")
    s = scenario
    theta = mixing_angle(s.coupling_g, s.atom_number, s.omega0)
    vg = group_velocity(theta, s.c_light)
    m_b = s.k_probe / vg
    sin2 = math.sin(theta) ** 2
    transit = s.medium_length / vg
    v_x, alpha, centers = [], [], []
    for chi in params.chi:
        force = chi * s.b1 * sin2
        v_x.append(force * transit / m_b)
        alpha.append(chi * s.b1 * s.medium_length * params.tan2_theta / (s.k_probe * s.c_light))
        centers.append(s.probe_a + chi * s.b1 * s.medium_length**2 * sin2 / (2.0 * s.k_probe * vg))
    return DspKinematics(theta, m_b, vg, tuple(v_x), tuple(alpha), tuple(centers))
