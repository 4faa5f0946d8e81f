"""Command-line front end: ``mosg <subcommand> ...``."""
from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import analytic, atomic, polariton, spectral
from .classify import SplitVerdict, classify, classify_scenario
from .errors import (
    BadSweepKey,
    ControlFieldUnderflow,
    GridError,
    PacketOutsideGrid,
    ScenarioError,
    WraparoundError,
    WrongMode,
)
from .hamiltonian import build_potentials, linearization_discrepancy
from .model import Scenario, control_rabi, derive, derived_lines, load_scenario, parse_pairs
from .output import (
    TRAJECTORY_HEADER,
    atomic_write,
    csv_text,
    kv_text,
    snapshot_name,
    snapshot_text,
)
from .validation import converged_response, run_suites

log = logging.getLogger("mosg")

CONFIG_ERRORS = (ScenarioError, GridError, PacketOutsideGrid, WrongMode, OSError)
GUARD_ERRORS = (WraparoundError, ControlFieldUnderflow)
SNAPSHOT_TIMES = (0.0, 1.0, 2.0, 3.0)
SWEEP_KEYS = (
    "coupling_g", "atom_number", "gamma_excited", "gamma_ground", "b0", "b1", "omega0",
    "sigma_ctrl", "k_probe", "c_light", "probe_a", "probe_b", "medium_length",
)


@dataclass
class RunOptions:
    dt: float = 1e-3
    grid_n: int = 2048
    grid_halfwidth: Optional[float] = None


@dataclass
class RunReport:
    scenario_echo: Scenario
    verdict: SplitVerdict
    exit_centers_analytic: Tuple[float, float]
    exit_centers_numeric: Tuple[float, float]
    max_center_discrepancy: float
    norms: Tuple[float, float]
    linearization: float = 0.0
    grid_half_width: float = 0.0
    artifacts: List[Path] = field(default_factory=list)

    def pairs(self, opts: RunOptions) -> list:
        v = self.verdict
        return [
            ("mode", self.scenario_echo.mode.value),
            ("category", v.category.value),
            ("label", v.condition_label or "-"),
            ("dir1", v.bend_direction[0].value),
            ("dir2", v.bend_direction[1].value),
            ("order", v.magnitude_order.value),
            ("t_final", self.scenario_echo.transit_time),
            ("x1_analytic", self.exit_centers_analytic[0]),
            ("x2_analytic", self.exit_centers_analytic[1]),
            ("x1_numeric", self.exit_centers_numeric[0]),
            ("x2_numeric", self.exit_centers_numeric[1]),
            ("max_center_discrepancy", self.max_center_discrepancy),
            ("linearization_discrepancy", self.linearization),
            ("norm1", self.norms[0]),
            ("norm2", self.norms[1]),
            ("dt", opts.dt),
            ("grid_n", opts.grid_n),
            ("grid_half_width", self.grid_half_width),
        ]


def parse_overrides(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ScenarioError(f"override must be key=value, got {item!r}")
        out.update(parse_pairs(item))
    return out


def read_scenario(path, overrides: Sequence[str] = ()) -> Scenario:
    text = Path(path).read_text(encoding="utf-8")
    return load_scenario(text, parse_overrides(overrides))


def simulate(scenario: Scenario, opts: RunOptions, snapshot_times: Sequence[float] = ()):
    """Spectral run to L/c. Returns (grid, final state, snapshots, params)."""
    params = derive(scenario)
    grid = spectral.default_grid(scenario, params, n_points=opts.grid_n, half_width=opts.grid_halfwidth)
    spectral.check_grid(grid, scenario.probe_b, max(abs(s) for s in params.eta1) * scenario.transit_time)
    pots = build_potentials(scenario, params, grid.x)
    amp = 1.0 / math.sqrt(2.0)
    init = spectral.init_gaussian(grid, scenario.probe_a, scenario.probe_b, (amp, amp))
    final, snaps = spectral.propagate(init, scenario, scenario.transit_time, opts.dt, snapshot_times, pots)
    return grid, final, snaps, params, pots


def cmd_run(scenario_path, out_dir, overrides: Sequence[str] = (), opts: Optional[RunOptions] = None) -> RunReport:
    opts = opts or RunOptions()
    scenario = read_scenario(scenario_path, overrides)
    t_end = scenario.transit_time
    snap_times = sorted({t for t in SNAPSHOT_TIMES if t <= t_end} | {t_end})
    traj_times = sorted(set(np.linspace(0.0, t_end, 51).tolist()) | set(snap_times))
    grid, final, states, params, pots = simulate(scenario, opts, traj_times)

    predicted = analytic.exit_centers(scenario, params)
    obs = spectral.observables(final)
    numeric = tuple(o.require_center() for o in obs)
    report = RunReport(
        scenario_echo=scenario,
        verdict=classify_scenario(scenario, params),
        exit_centers_analytic=tuple(predicted),
        exit_centers_numeric=numeric,
        max_center_discrepancy=max(abs(a - n) for a, n in zip(predicted, numeric)),
        norms=(obs[0].norm, obs[1].norm),
        linearization=linearization_discrepancy(pots, scenario.probe_a, scenario.probe_b),
        grid_half_width=grid.half_width,
    )

    out = Path(out_dir)
    texts = {"trajectory.csv": csv_text(TRAJECTORY_HEADER, [spectral.trajectory_row(s) for s in states])}
    for st in states:
        if any(abs(st.t - t) < 1e-12 for t in snap_times):
            texts[snapshot_name(st.t)] = snapshot_text(st)
    texts["report.txt"] = kv_text(report.pairs(opts))
    for name, text in texts.items():
        report.artifacts.append(atomic_write(out / name, text))
    return report


SWEEP_HEADER = ("value", "x1_analytic", "x2_analytic", "x1_numeric", "x2_numeric", "verdict")


def _sweep_point(scenario: Scenario, key: str, value: float, opts: RunOptions):
    s = dataclasses.replace(scenario, **{key: value})
    params = derive(s)
    _, final, _, _, _ = simulate(s, opts)
    num = [o.require_center() for o in spectral.observables(final)]
    ana = analytic.exit_centers(s, params)
    return (value, ana[0], ana[1], num[0], num[1], classify_scenario(s, params).category.value)


def cmd_sweep(
    scenario_path,
    param_key: str,
    values: Sequence[float],
    out_csv,
    overrides: Sequence[str] = (),
    opts: Optional[RunOptions] = None,
    workers: int = 4,
) -> int:
    if param_key not in SWEEP_KEYS:
        raise BadSweepKey(param_key)
    opts = opts or RunOptions()
    scenario = read_scenario(scenario_path, overrides)
    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(lambda v: _sweep_point(scenario, param_key, float(v), opts), values))
    atomic_write(out_csv, csv_text(SWEEP_HEADER, rows))
    return 0


def cmd_validate(suite: str = "all", stream=None) -> int:
    stream = stream or sys.stdout
    checks = run_suites(suite)
    for c in checks:
        print(c.line(), file=stream)
    failed = [c for c in checks if not c.passed]
    worst = max(checks, key=lambda c: c.error / c.tolerance)
    print(f"worst {worst.name} error/tol={worst.error / worst.tolerance:.3e}", file=stream)
    print(f"{len(checks) - len(failed)}/{len(checks)} passed", file=stream)
    return 0 if not failed else 1


def response_rows(scenario: Scenario, positions: Sequence[float]):
    rows = []
    for x in positions:
        det = atomic.detunings_at(scenario, x)
        omega = float(control_rabi(scenario, x))
        ode = converged_response(scenario, det, omega=omega)
        for j, val in ((1, ode.s13), (2, ode.s23)):
            steady = atomic.steady_state_coherence(j, det, omega, scenario.coupling_g, 1.0)
            rows.append((det.probe(j), det.dc, steady.real, steady.imag, val.real, val.imag, abs(val - steady)))
    return rows


RESPONSE_HEADER = ("delta_j", "delta_c", "re_steady", "im_steady", "re_ode", "im_ode", "abs_err")
POTENTIAL_HEADER = ("x", "U1", "U2", "V", "muB")
ANALYTIC_HEADER = ("t", "center_1", "center_2", "width_1", "width_2", "peak_1", "peak_2")


def potential_rows(scenario: Scenario, opts: RunOptions):
    params = derive(scenario)
    grid = spectral.default_grid(scenario, params, n_points=opts.grid_n, half_width=opts.grid_halfwidth)
    x = grid.x
    pots = build_potentials(scenario, params, x)
    return zip(x, pots.exact_u(x, 1), pots.exact_u(x, 2), pots.scalar_v_at(x), pots.spin_coupling_at(x))


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        atomic_write(path, text)
    else:
        sys.stdout.write(text)


# --- argument parsing ----------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", default=None, help="output directory (run, sweep) or file (CSV subcommands)")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                   help="override a scenario key (repeatable, last wins)")
    p.add_argument("--dt", type=float, default=1e-3, help="propagation step (default 1e-3)")
    p.add_argument("--grid-n", type=int, default=2048, help="transverse grid points (power of two)")
    p.add_argument("--grid-halfwidth", type=float, default=None, help="transverse half-width")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="mosg", description="Stern-Gerlach splitting of polarized light in a tripod EIT medium")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="propagate a scenario to the cell exit")
    p.add_argument("scenario")

    p = sub.add_parser("sweep", parents=[common], help="exit centres versus one scenario key")
    p.add_argument("scenario")
    p.add_argument("key")
    p.add_argument("values", nargs="*", type=float)
    p.add_argument("--workers", type=int, default=min(4, os.cpu_count() or 1))

    p = sub.add_parser("classify", parents=[common], help="split taxonomy verdict")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--chi1", type=float)
    p.add_argument("--chi2", type=float)
    p.add_argument("--gradient-sign", choices=["+", "-", "0"], default="+")

    p = sub.add_parser("validate", parents=[common], help="cross-check suites, or dump derived parameters")
    p.add_argument("suite", nargs="?", default="all", choices=["response", "linear", "optical", "polariton", "all"])
    p.add_argument("--scenario", help="print derived parameters of this scenario instead of running suites")

    p = sub.add_parser("response", parents=[common], help="steady-state vs integrated coherences (CSV)")
    p.add_argument("scenario")
    p.add_argument("--x", type=float, action="append", help="transverse position(s); default probe_a")

    p = sub.add_parser("potentials", parents=[common], help="U1, U2, V, muB on the grid (CSV)")
    p.add_argument("scenario")

    p = sub.add_parser("analytic", parents=[common], help="closed-form packet trajectory (CSV)")
    p.add_argument("scenario")
    p.add_argument("--steps", type=int, default=50)

    p = sub.add_parser("polariton", parents=[common], help="dark-polariton kinematics")
    p.add_argument("scenario")
    p.add_argument("--profile-csv", help="also write dark/bright profiles of the launched packet")
    return parser


def _dispatch(args) -> int:
    opts = RunOptions(dt=args.dt, grid_n=args.grid_n, grid_halfwidth=args.grid_halfwidth)
    cmd = args.command
    if cmd == "run":
        report = cmd_run(args.scenario, args.out or "mosg_out", args.overrides, opts)
        print(kv_text(report.pairs(opts)), end="")
        return 0
    if cmd == "sweep":
        out = Path(args.out or "mosg_out")
        return cmd_sweep(args.scenario, args.key, args.values, out / f"sweep_{args.key}.csv",
                         args.overrides, opts, args.workers)
    if cmd == "classify":
        if args.scenario:
            s = read_scenario(args.scenario, args.overrides)
            verdict = classify_scenario(s, derive(s))
        else:
            if args.chi1 is None or args.chi2 is None:
                raise ScenarioError("classify needs a scenario file or both --chi1 and --chi2")
            verdict = classify(args.chi1, args.chi2, {"+": 1, "-": -1, "0": 0}[args.gradient_sign])
        print(verdict.line())
        return 0
    if cmd == "validate":
        if args.scenario:
            s = read_scenario(args.scenario, args.overrides)
            print("\n".join(derived_lines(derive(s))))
            return 0
        return cmd_validate(args.suite)
    if cmd == "response":
        s = read_scenario(args.scenario, args.overrides)
        _emit(csv_text(RESPONSE_HEADER, response_rows(s, args.x or [s.probe_a])), args.out)
        return 0
    if cmd == "potentials":
        s = read_scenario(args.scenario, args.overrides)
        _emit(csv_text(POTENTIAL_HEADER, potential_rows(s, opts)), args.out)
        return 0
    if cmd == "analytic":
        s = read_scenario(args.scenario, args.overrides)
        params = derive(s)
        pots = build_potentials(s, params)
        times = np.linspace(0.0, s.transit_time, args.steps + 1)
        _emit(csv_text(ANALYTIC_HEADER, analytic.trajectory_rows(s, pots, times)), args.out)
        return 0
    if cmd == "polariton":
        s = read_scenario(args.scenario, args.overrides)
        kin = polariton.dsp_kinematics(s, derive(s))
        print(kv_text([
            ("theta", kin.theta), ("v_group", kin.v_group), ("mass_b", kin.mass_b),
            ("v_x_1", kin.v_transverse[0]), ("v_x_2", kin.v_transverse[1]),
            ("alpha_1", kin.deflection[0]), ("alpha_2", kin.deflection[1]),
        ]), end="")
        if args.profile_csv:
            grid = spectral.default_grid(s, n_points=opts.grid_n, half_width=opts.grid_halfwidth)
            st = spectral.init_gaussian(grid, s.probe_a, s.probe_b)
            rows = [grid.x]
            for e in (st.e1, st.e2):
                pair = polariton.to_polaritons(e, polariton.adiabatic_spin_coherence(e, s.coupling_g, s.omega0),
                                               kin.theta, s.atom_number)
                rows += [pair.dark.real, pair.dark.imag, pair.bright.real, pair.bright.imag]
            header = ("x", "re_dark1", "im_dark1", "re_bright1", "im_bright1",
                      "re_dark2", "im_dark2", "re_bright2", "im_bright2")
            atomic_write(args.profile_csv, csv_text(header, zip(*rows)))
        return 0
    raise AssertionError(cmd)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _dispatch(args)
    except BrokenPipeError:
        # stdout closed early (e.g. piped into head)
        sys.stderr.close()
        return 0
    except GUARD_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BadSweepKey as exc:
        print(f"error: not a sweepable scenario key: {exc.args[0]}", file=sys.stderr)
        return 1
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
