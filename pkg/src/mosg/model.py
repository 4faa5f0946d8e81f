"""Scenario data model, file format, and derived parameters.

Units: hbar = 1 and, by convention, c = 1 with lengths measured in units of
the initial probe width b (time in b/c). Nothing in the code assumes these
values; they only keep grids well conditioned.

Scenario files are flat UTF-8 ``key = value`` lines. ``#`` starts a comment.
Vector-valued keys (``mu``, ``bare_detunings``) take comma-separated numbers.
"""
from __future__ import annotations

import dataclasses
import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

import numpy as np

from .errors import BadValue, MissingKey, ModeMismatch, UnknownKey

log = logging.getLogger("mosg")


class Mode(str, enum.Enum):
    MAGNETIC = "MagneticGradient"
    OPTICAL = "OpticalGradient"
    UNIFORM = "Uniform"


@dataclass(frozen=True)
class Scenario:
    """One experiment, fully specified in dimensionless units."""

    mode: Mode
    coupling_g: float
    atom_number: float
    gamma_excited: float
    mu: Tuple[float, float, float, float]
    omega0: float
    k_probe: float
    probe_b: float
    medium_length: float
    gamma_ground: float = 0.0
    b0: float = 0.0
    b1: float = 0.0
    sigma_ctrl: Optional[float] = None
    c_light: float = 1.0
    probe_a: float = 0.0
    bare_detunings: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "mu", tuple(float(v) for v in self.mu))
        object.__setattr__(self, "bare_detunings", tuple(float(v) for v in self.bare_detunings))
        if len(self.mu) != 4:
            raise BadValue("mu", f"expected 4 components, got {len(self.mu)}")
        if len(self.bare_detunings) != 3:
            raise BadValue("bare_detunings", f"expected 3 components, got {len(self.bare_detunings)}")
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            vals = v if isinstance(v, tuple) else (v,)
            if f.name == "mode" or v is None:
                continue
            if not all(math.isfinite(x) for x in vals):
                raise BadValue(f.name, "must be finite")
        positive = ("atom_number", "omega0", "k_probe", "probe_b", "medium_length", "c_light")
        for key in positive:
            if not getattr(self, key) > 0:
                raise BadValue(key, "must be > 0")
        for key in ("coupling_g", "gamma_excited", "gamma_ground"):
            if getattr(self, key) < 0:
                raise BadValue(key, "must be >= 0")
        if self.sigma_ctrl is not None and not self.sigma_ctrl > 0:
            raise BadValue("sigma_ctrl", "must be > 0")
        if self.mode is Mode.OPTICAL and self.sigma_ctrl is None:
            raise ModeMismatch(self.mode.value, "sigma_ctrl is required")
        if self.mode is not Mode.MAGNETIC and self.b1 != 0.0:
            raise ModeMismatch(self.mode.value, "b1 must be 0 outside MagneticGradient mode")

    @property
    def chi(self) -> Tuple[float, float]:
        return (self.mu[0] - self.mu[3], self.mu[1] - self.mu[3])

    @property
    def transit_time(self) -> float:
        """Time for the co-moving frame to cross the cell, L/c."""
        return self.medium_length / self.c_light

    def replace(self, **changes) -> "Scenario":
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name: f for f in dataclasses.fields(Scenario)}
_VECTOR_KEYS = {"mu": 4, "bare_detunings": 3}
_REQUIRED = tuple(
    f.name
    for f in dataclasses.fields(Scenario)
    if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING
)
_MODE_REQUIRED = {Mode.MAGNETIC: ("b1",), Mode.OPTICAL: ("sigma_ctrl",), Mode.UNIFORM: ()}


def parse_value(key: str, text: str):
    """Convert the text of one ``key = value`` entry to its typed value."""
    if key not in _FIELDS:
        raise UnknownKey([key])
    text = text.strip()
    if key == "mode":
        try:
            return Mode(text)
        except ValueError:
            raise BadValue(key, f"unknown mode {text!r}") from None
    if key in _VECTOR_KEYS:
        parts = [p for p in text.strip("()[]").replace(",", " ").split()]
        if len(parts) != _VECTOR_KEYS[key]:
            raise BadValue(key, f"expected {_VECTOR_KEYS[key]} comma-separated numbers")
        try:
            return tuple(float(p) for p in parts)
        except ValueError:
            raise BadValue(key, f"not numeric: {text!r}") from None
    if key == "sigma_ctrl" and text.lower() in {"", "none"}:
        return None
    try:
        return float(text)
    except ValueError:
        raise BadValue(key, f"not numeric: {text!r}") from None


def parse_pairs(config_text: str) -> dict:
    """Split scenario text into raw ``{key: value_text}`` (last occurrence wins)."""
    out = {}
    for lineno, raw in enumerate(config_text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadValue(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def scenario_from_mapping(values: Mapping[str, object]) -> Scenario:
    """Build a Scenario from already-typed values, checking key presence first."""
    unknown = [k for k in values if k not in _FIELDS]
    if unknown:
        raise UnknownKey(unknown)
    for key in _REQUIRED:
        if key not in values:
            raise MissingKey(key)
    mode = Mode(values["mode"])
    for key in _MODE_REQUIRED[mode]:
        if key not in values:
            raise ModeMismatch(mode.value, f"{key} is required")
    scenario = Scenario(**values)
    for msg in diagnostics(scenario):
        log.warning(msg)
    return scenario


def load_scenario(config_text: str, overrides: Optional[Mapping[str, str]] = None) -> Scenario:
    """Parse and validate scenario text. ``overrides`` are raw strings applied last."""
    pairs = parse_pairs(config_text)
    if overrides:
        pairs.update(overrides)
    unknown = [k for k in pairs if k not in _FIELDS]
    if unknown:
        raise UnknownKey(unknown)
    return scenario_from_mapping({k: parse_value(k, v) for k, v in pairs.items()})


def _fmt(v) -> str:
    if isinstance(v, Mode):
        return v.value
    if isinstance(v, tuple):
        return ", ".join(repr(float(x)) for x in v)
    return repr(float(v))


def serialize_scenario(scenario: Scenario) -> str:
    lines = []
    for f in dataclasses.fields(Scenario):
        v = getattr(scenario, f.name)
        if v is None:
            continue
        lines.append(f"{f.name} = {_fmt(v)}")
    return "\n".join(lines) + "\n"


def diagnostics(scenario: Scenario) -> list:
    """Human-readable validity warnings. Never affects results."""
    msgs = []
    if not scenario.omega0**2 > 100.0 * scenario.gamma_excited * scenario.gamma_ground:
        msgs.append(
            "EIT validity: omega0^2 = %.6g is not >> gamma_excited*gamma_ground = %.6g"
            % (scenario.omega0**2, scenario.gamma_excited * scenario.gamma_ground)
        )
    if scenario.mode is Mode.OPTICAL and not scenario.probe_b < scenario.sigma_ctrl / 3.0:
        msgs.append(
            "linearization validity: probe_b = %.6g is not < sigma_ctrl/3 = %.6g"
            % (scenario.probe_b, scenario.sigma_ctrl / 3.0)
        )
    return msgs


# --- fields --------------------------------------------------------------

def magnetic_field(scenario: Scenario, x):
    """B(x): linear in MagneticGradient mode, uniform B0 otherwise."""
    x = np.asarray(x, dtype=float)
    if scenario.mode is Mode.MAGNETIC:
        return scenario.b0 + scenario.b1 * x
    return np.full_like(x, scenario.b0)


def control_rabi(scenario: Scenario, x):
    """|Omega(x)|: Gaussian transverse profile in OpticalGradient mode, constant otherwise."""
    x = np.asarray(x, dtype=float)
    if scenario.mode is Mode.OPTICAL:
        return scenario.omega0 * np.exp(-(x**2) / (2.0 * scenario.sigma_ctrl**2))
    return np.full_like(x, scenario.omega0)


def detuning_triplet(scenario: Scenario, x):
    """(delta1, delta2, deltac) at position(s) x, with Zeeman shifts mu_i * B(x)."""
    bfield = magnetic_field(scenario, x)
    m1, m2, _, m4 = scenario.mu
    d1, d2, dc = scenario.bare_detunings
    return d1 + m1 * bfield, d2 + m2 * bfield, dc + m4 * bfield


# --- derived parameters --------------------------------------------------

@dataclass(frozen=True)
class DerivedParams:
    scenario: Scenario = field(repr=False)
    tan2_theta: float
    eff_mass: float
    chi: Tuple[float, float]
    zeta: float
    b0_eff: float
    eta0: Tuple[float, float]
    eta1: Tuple[float, float]
    v_group: float

    def detunings(self, x):
        return detuning_triplet(self.scenario, x)


def derive(scenario: Scenario) -> DerivedParams:
    g2n = scenario.coupling_g**2 * scenario.atom_number
    tan2 = g2n / scenario.omega0**2
    chi = scenario.chi
    a = scenario.probe_a
    bare1, bare2, bare_c = scenario.bare_detunings
    # Taylor coefficients of U_j about the probe centre: U_j(a) and dU_j/dx(a).
    eta0, eta1 = [], []
    for j, bare in enumerate((bare1, bare2)):
        if scenario.mode is Mode.OPTICAL:
            s2 = scenario.sigma_ctrl**2
            amp = g2n * ((bare_c - bare) - chi[j] * scenario.b0) / scenario.omega0**2
            grow = math.exp(min(a * a / s2, 709.0))
            eta0.append(amp * grow)
            eta1.append(amp * (2.0 * a / s2) * grow)
        else:
            b_at_a = scenario.b0 + (scenario.b1 * a if scenario.mode is Mode.MAGNETIC else 0.0)
            eta0.append(tan2 * ((bare_c - bare) - chi[j] * b_at_a))
            eta1.append(-chi[j] * scenario.b1 * tan2)
    return DerivedParams(
        scenario=scenario,
        tan2_theta=tan2,
        eff_mass=scenario.k_probe / scenario.c_light,
        chi=chi,
        zeta=scenario.b1 * tan2,
        b0_eff=scenario.b0 * tan2,
        eta0=tuple(eta0),
        eta1=tuple(eta1),
        v_group=scenario.c_light / (1.0 + tan2),
    )


def derived_lines(params: DerivedParams) -> list:
    """``key = value`` lines (12 significant digits) for the ``validate`` dump."""
    rows = [
        ("tan2_theta", params.tan2_theta),
        ("eff_mass", params.eff_mass),
        ("chi_1", params.chi[0]),
        ("chi_2", params.chi[1]),
        ("zeta", params.zeta),
        ("b0_eff", params.b0_eff),
        ("eta0_1", params.eta0[0]),
        ("eta0_2", params.eta0[1]),
        ("eta1_1", params.eta1[0]),
        ("eta1_2", params.eta1[1]),
        ("v_group", params.v_group),
    ]
    return [f"{k} = {v:.12g}" for k, v in rows]
