"""Split-step spectral solver for the two-component transverse envelope.

Each polarization component obeys

    i d/dt E_j = [ -(1/2m) d^2/dx^2 + U_j(x) ] E_j

in the frame co-moving with the pulse at speed c; the longitudinal coordinate
only advances as z = c t. The components never couple, so they are stepped
side by side with Strang splitting: half kinetic step in k-space, full
potential step in x-space, half kinetic step.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import AccuracyWarning, GridError, PacketOutsideGrid, WraparoundError, ZeroNorm
from .hamiltonian import MAX_OPTICAL_HALF_WIDTH, PotentialPair, build_potentials
from .model import DerivedParams, Mode, Scenario, derive

WRAP_TOL = 1e-8
ACCURACY_LIMIT = 0.5


@dataclass(frozen=True)
class Grid1D:
    n_points: int
    half_width: float

    def __post_init__(self):
        n = int(self.n_points)
        if n < 64 or n & (n - 1):
            raise GridError(f"n_points must be a power of two >= 64, got {self.n_points}")
        if not self.half_width > 0:
            raise GridError("half_width must be > 0")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @property
    def x(self) -> np.ndarray:
        return -self.half_width + self.dx * np.arange(self.n_points)

    @property
    def k(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)

    @property
    def k_nyquist(self) -> float:
        return math.pi / self.dx


def check_grid(grid: Grid1D, b: float, max_momentum: float = 0.0) -> None:
    """Resolution and Nyquist checks for a packet of width b."""
    if grid.dx > b / 8.0 * (1 + 1e-12):
        raise GridError(f"dx = {grid.dx:.4g} does not resolve the packet (need dx <= b/8 = {b / 8:.4g})")
    # packet spectrum ~ exp(-k^2 b^2 / 2) about the drift momentum: keep 12/b headroom
    need = abs(max_momentum) + 12.0 / b
    if need > grid.k_nyquist:
        raise GridError(f"Nyquist k = {grid.k_nyquist:.4g} below required {need:.4g}")


def default_grid(
    scenario: Scenario,
    params: Optional[DerivedParams] = None,
    t_final: Optional[float] = None,
    n_points: int = 2048,
    half_width: Optional[float] = None,
) -> Grid1D:
    """Grid sized to hold the packet through ``t_final`` (defaults to L/c)."""
    if half_width is None:
        params = params or derive(scenario)
        t = scenario.transit_time if t_final is None else t_final
        b, a, m = scenario.probe_b, scenario.probe_a, params.eff_mass
        drift = max(abs(s) for s in params.eta1) * t * t / (2.0 * m)
        spread = abs(a) + drift + 6.0 * math.sqrt(b * b + (t / (m * b)) ** 2)
        half_width = max(8.0 * b, abs(a) + 6.0 * b, spread)
        if scenario.mode is Mode.OPTICAL:
            half_width = min(half_width, MAX_OPTICAL_HALF_WIDTH * scenario.sigma_ctrl)
    return Grid1D(n_points, half_width)


@dataclass(frozen=True, eq=False)
class FieldState:
    grid: Grid1D
    e1: np.ndarray
    e2: np.ndarray
    t: float = 0.0
    z_offset: float = 0.0

    def component(self, j: int) -> np.ndarray:
        return self.e1 if j == 1 else self.e2


def init_gaussian(grid: Grid1D, a: float, b: float, amplitudes=(1.0, 1.0)) -> FieldState:
    """Unit-normalized Gaussian (per unit amplitude) centred at a in each component."""
    if not abs(a) + 4.0 * b < grid.half_width:
        raise PacketOutsideGrid(f"|a| + 4b = {abs(a) + 4 * b:.4g} exceeds half_width {grid.half_width:.4g}")
    x = grid.x
    shape = (math.pi * b * b) ** -0.25 * np.exp(-((x - a) ** 2) / (2.0 * b * b))
    return FieldState(
        grid=grid,
        e1=complex(amplitudes[0]) * shape.astype(np.complex128),
        e2=complex(amplitudes[1]) * shape.astype(np.complex128),
    )


class _Stepper:
    """Cached Strang phase factors for one grid, potential pair and step size."""

    def __init__(self, grid: Grid1D, potentials: PotentialPair, use_exact: bool):
        s = potentials.scenario
        self.grid = grid
        self.mass = s.k_probe / s.c_light
        self.c = s.c_light
        x = grid.x
        self.k2 = grid.k**2
        self.u = [np.asarray(potentials.u(x, j, exact=use_exact), dtype=float) for j in (1, 2)]
        self._cache = {}

    def phases(self, dt: float):
        ph = self._cache.get(dt)
        if ph is None:
            kin = np.exp(-1j * self.k2 * dt / (4.0 * self.mass))
            pot = [np.exp(-1j * u * dt) for u in self.u]
            ph = self._cache[dt] = (kin, kin * kin, pot)
        return ph

    def advance(self, psis: List[np.ndarray], dt: float, n_steps: int) -> None:
        # consecutive half kinetic steps are fused into one full step
        kin_half, kin_full, pot = self.phases(dt)
        fft, ifft = np.fft.fft, np.fft.ifft
        for j in range(2):
            psi = psis[j]
            if n_steps == 0 or not psi.any():
                continue
            spec = _kernels.apply_phase(fft(psi), kin_half)
            for i in range(n_steps):
                psi = _kernels.apply_phase(ifft(spec), pot[j])
                spec = _kernels.apply_phase(fft(psi), kin_full if i < n_steps - 1 else kin_half)
            psis[j] = ifft(spec)

    def accuracy_check(self, psis, dt: float) -> float:
        """dt * max|U| over the region where the field carries intensity."""
        worst = 0.0
        for j in range(2):
            rho = np.abs(psis[j]) ** 2
            if rho.max() == 0.0:
                continue
            mask = rho > 1e-12 * rho.max()
            worst = max(worst, dt * float(np.max(np.abs(self.u[j][mask]))))
        if worst > ACCURACY_LIMIT:
            warnings.warn(f"dt*max|U| = {worst:.3g} over the packet exceeds {ACCURACY_LIMIT}", AccuracyWarning, stacklevel=3)
        return worst


def step(state: FieldState, potentials: PotentialPair, use_exact: bool, dt: float) -> FieldState:
    """One Strang step of size dt."""
    if not dt > 0:
        raise ValueError("dt must be > 0")
    stepper = _Stepper(state.grid, potentials, use_exact)
    psis = [state.e1.copy(), state.e2.copy()]
    stepper.accuracy_check(psis, dt)
    stepper.advance(psis, dt, 1)
    return FieldState(state.grid, psis[0], psis[1], state.t + dt, state.z_offset + stepper.c * dt)


def boundary_fraction(state: FieldState) -> Tuple[float, float]:
    """Largest intensity in the outer 1/64 of the grid relative to the peak, per component."""
    edge = max(2, state.grid.n_points // 64)
    out = []
    for psi in (state.e1, state.e2):
        rho = np.abs(psi) ** 2
        peak = rho.max()
        if peak == 0.0:
            out.append(0.0)
            continue
        out.append(float(max(rho[:edge].max(), rho[-edge:].max()) / peak))
    return tuple(out)


def check_wraparound(state: FieldState, tol: float = WRAP_TOL) -> None:
    frac = boundary_fraction(state)
    for j, f in enumerate(frac, 1):
        if f > tol:
            raise WraparoundError(f"component {j} boundary intensity {f:.3g} of peak at t = {state.t:.6g}")


def propagate(
    state: FieldState,
    scenario: Scenario,
    t_final: float,
    dt: float = 1e-3,
    snapshot_times: Sequence[float] = (),
    potentials: Optional[PotentialPair] = None,
    use_exact: bool = True,
    guard: bool = True,
) -> Tuple[FieldState, List[FieldState]]:
    """Evolve ``state`` by ``t_final``, returning the final state and snapshots.

    Snapshot times are measured from the start of this call. Every segment
    between consecutive targets is split into equal steps no larger than dt,
    so snapshots land exactly on the requested times.
    """
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    snaps = [float(t) for t in snapshot_times]
    if snaps != sorted(snaps) or (snaps and (snaps[0] < 0 or snaps[-1] > t_final * (1 + 1e-12))):
        raise ValueError("snapshot_times must be sorted and inside [0, t_final]")
    if potentials is None:
        potentials = build_potentials(scenario, derive(scenario), state.grid.x)
    stepper = _Stepper(state.grid, potentials, use_exact)
    psis = [state.e1.copy(), state.e2.copy()]
    stepper.accuracy_check(psis, dt)

    t0, z0 = state.t, state.z_offset
    targets = snaps + [t_final]
    elapsed = 0.0
    out = []
    for target in targets:
        span = target - elapsed
        if span > 0:
            n = max(1, int(math.ceil(span / dt - 1e-9)))
            stepper.advance(psis, span / n, n)
            elapsed = target
        cur = FieldState(state.grid, psis[0].copy(), psis[1].copy(), t0 + elapsed, z0 + stepper.c * elapsed)
        if guard:
            check_wraparound(cur)
        out.append(cur)
    return out[-1], out[:-1]


@dataclass(frozen=True)
class ComponentObservables:
    norm: float
    center: Optional[float]
    width: Optional[float]
    peak_position: Optional[float]

    def require_center(self) -> float:
        if self.center is None:
            raise ZeroNorm("component carries no intensity")
        return self.center


def observables(state: FieldState) -> Tuple[ComponentObservables, ComponentObservables]:
    x, dx = state.grid.x, state.grid.dx
    out = []
    for psi in (state.e1, state.e2):
        norm, mean, var = _kernels.moments(x, psi, dx)
        if norm == 0.0:
            out.append(ComponentObservables(0.0, None, None, None))
            continue
        peak = float(x[int(np.argmax(np.abs(psi)))])
        out.append(ComponentObservables(float(norm), float(mean), float(math.sqrt(max(var, 0.0))), peak))
    return tuple(out)


def l2_distance(grid: Grid1D, psi_a: np.ndarray, psi_b: np.ndarray) -> float:
    return float(math.sqrt(np.sum(np.abs(psi_a - psi_b) ** 2) * grid.dx))


def trajectory_row(state: FieldState) -> tuple:
    """(t, center1, center2, width1, width2, norm1, norm2); absent values are NaN."""
    o1, o2 = observables(state)
    nan = float("nan")
    return (
        state.t,
        nan if o1.center is None else o1.center,
        nan if o2.center is None else o2.center,
        nan if o1.width is None else o1.width,
        nan if o2.width is None else o2.width,
        o1.norm,
        o2.norm,
    )
