"""Command-line experiments.

Every sweep command writes a CSV table (and optionally an SVG plot) whose
comment header records the package version, every parameter and whether
each bound's grid refinement converged. Identical invocations produce
byte-identical output.

Common options (``--seed``, ``--grid``, ``--out`` ...) may be given before
or after the subcommand.

Exit codes: 0 success, 1 invalid input (including usage errors), 2 failed
check, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import dynamics as dyn
from . import qslbounds as qb
from . import stategeom as sg
from . import verify
from ._version import __version__
from .errors import ConvergenceError, CrosscheckError, FrameTrackingError, QslError, ValidationError
from .matrixcore import as_density
from .textio import check_hermitian_block, format_value, read_matrices, render_csv, render_svg

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK = 2
EXIT_CONVERGENCE = 3

SIMPLEX_TOL = 1e-12
PURE_TOL = 1e-10


@dataclass
class Table:
    """One experiment's output before rendering."""

    title: str
    params: list
    columns: list
    rows: list
    unconverged: int = 0
    notes: list = field(default_factory=list)
    x_column: str = ""
    plot_columns: tuple = ()

    def header(self, command: str, args) -> list:
        head = [("qslkit", __version__), ("command", command)]
        head += self.params
        head += [("grid", args.grid), ("seed", args.seed), ("quick", args.quick)]
        head.append(("grid_converged", "all" if self.unconverged == 0 else f"{self.unconverged} bound(s) hit the refinement cap"))
        head += [("note", n) for n in self.notes]
        return head


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _steps(lo: float, hi: float, step: float) -> list[float]:
    if not (step > 0):
        raise ValidationError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValidationError(f"range end {hi} is below its start {lo}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(count)]


def _thin(values: list, quick: bool) -> list:
    if not quick or len(values) <= 3:
        return values
    out = values[::3]
    if out[-1] != values[-1]:
        out.append(values[-1])
    return out


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    """Ordered map, fanned out over processes when ``jobs > 1``."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def endpoint_alpha(traj: dyn.Trajectory) -> float:
    """Larger endpoint purity, or 1 when both endpoints are maximally mixed."""
    ends = traj.states([0.0, traj.horizon])
    purity = float(max(np.real(np.einsum("kij,kji->k", ends, ends))))
    if purity <= 1.0 / traj.dim + sg.ALPHA_MARGIN:
        return 1.0
    return min(purity, 1.0)


def _lambda_line(lambda0: float, points: int, pairs: str | None):
    """``(lambda1, lambda2)`` pairs on the line ``lambda1 + lambda2 = 1 - lambda0``."""
    if not (0.0 <= lambda0 < 1.0):
        raise ValidationError(f"lambda0 must lie in [0, 1), got {lambda0}")
    rest = 1.0 - lambda0
    if pairs:
        out = []
        for item in pairs.split(","):
            try:
                a, b = (float(x) for x in item.split(":"))
            except ValueError:
                raise ValidationError(f"bad lambda pair {item!r}; expected 'lambda1:lambda2'") from None
            if a < 0 or b < 0:
                raise ValidationError(f"populations must be nonnegative, got {item!r}")
            if a + b > rest + SIMPLEX_TOL:
                raise ValidationError(f"lambda1 + lambda2 = {a + b:.12g} exceeds 1 - lambda0 = {rest:.12g}")
            if a + b < rest - SIMPLEX_TOL:
                raise ValidationError(f"lambda1 + lambda2 = {a + b:.12g} falls short of 1 - lambda0 = {rest:.12g}")
            out.append((a, b))
        return out
    if points < 2:
        raise ValidationError(f"need at least 2 points, got {points}")
    m = points - 1
    return [(rest * k / m, rest * (m - k) / m) for k in range(points)]


def _unitary_setup(e_m: float, omega: float | None, mu: float):
    """``(H_T, H0 + H1, rho0, max horizon)`` for the three-level drive."""
    if not (e_m > 0 and math.isfinite(e_m)):
        raise ValidationError(f"E_m must be positive, got {e_m}")
    omega = e_m if omega is None else omega
    spec = qb.EnergySpec((0.0, mu * e_m, e_m))
    rho0 = np.diag([1.0, 0.0, 0.0]).astype(complex)
    h_opt = qb.saturating_hamiltonian(rho0, spec, frame=np.eye(3))
    h_drive = dyn.driven_hamiltonian(e_m, omega, mu)
    return h_opt.data, h_drive, rho0, spec.saturation_window, omega


def _check_tau_range(taus: list[float], window: float):
    if taus[0] <= 0:
        raise ValidationError(f"tau values must be positive, got {taus[0]}")
    if taus[-1] > window + 1e-12:
        raise ValidationError(f"tau {taus[-1]} exceeds the saturation window pi/max-gap = {window:.12g}")


# ---------------------------------------------------------------------------
# row workers (module level so they can run in worker processes)
# ---------------------------------------------------------------------------


def _fig1_row(tau, h_opt, h_drive, rho0, grid):
    opt = qb.tau_qsl(dyn.unitary_trajectory(h_opt, rho0, tau), grid)
    drv = qb.tau_qsl(dyn.unitary_trajectory(h_drive, rho0, tau), grid)
    row = [tau, opt.bound, opt.ratio, drv.bound, drv.ratio]
    return row, int(not opt.converged) + int(not drv.converged)


def _damping_row(pair, lambda0, gamma, tau, grid):
    traj = dyn.amplitude_damping_trajectory((lambda0,) + tuple(pair), dyn.ConstantDecay(gamma), tau)
    rep = qb.tau_qsl(traj, grid)
    return [pair[0], pair[1], rep.ratio], int(not rep.converged)


def _nonmarkov_row(tau, decay, grid):
    traj = dyn.amplitude_damping_trajectory((1 / 3, 1 / 3, 1 / 3), decay, tau)
    rep = qb.tau_qsl(traj, grid)
    rate = float(dyn.decay_rate(decay, tau))
    return [tau, rate, rep.ratio], int(not rep.converged)


def _alpha_damping_row(pair, lambda0, gamma, tau, grid):
    traj = dyn.amplitude_damping_trajectory((lambda0,) + tuple(pair), dyn.ConstantDecay(gamma), tau)
    alpha = endpoint_alpha(traj)
    rep = qb.tau_alpha(traj, alpha, grid)
    return [pair[0], pair[1], alpha, rep.ratio], int(not rep.converged)


def _dephasing_state(lambda0, pair, lambda20=None):
    """Populations and coherences of the superposition sum_i sqrt(lambda_i)|i>.

    Every coherence is sqrt(lambda_i lambda_j), which makes the state pure.
    Given a number for ``lambda20``, only the coherence between levels 0 and 2
    is kept, at that value. With the other two at their maximum it would be
    forced to sqrt(lambda0 lambda2) anyway.
    """
    diag = (lambda0,) + tuple(pair)
    if lambda20 is not None:
        return diag, {(0, 2): lambda20}
    return diag, {(i, j): math.sqrt(max(diag[i] * diag[j], 0.0)) for i in range(3) for j in range(i + 1, 3)}


def _alpha_dephasing_row(pair, lambda0, lambda20, gamma, tau, grid):
    diag, coh = _dephasing_state(lambda0, pair, lambda20)
    traj = dyn.dephasing_trajectory(diag, coh, gamma, tau)
    purity = as_density(traj.states([0.0])[0]).purity
    alpha = endpoint_alpha(traj)
    rep = qb.tau_alpha(traj, alpha, grid)
    return [pair[0], pair[1], coh[(0, 2)], purity, alpha, rep.ratio], int(not rep.converged)


def _alpha_unitary_row(tau, h_opt, h_drive, rho0, grid):
    opt = qb.tau_alpha(dyn.unitary_trajectory(h_opt, rho0, tau), 1.0, grid)
    drv = qb.tau_alpha(dyn.unitary_trajectory(h_drive, rho0, tau), 1.0, grid)
    return [tau, opt.bound, opt.ratio, drv.bound, drv.ratio], int(not opt.converged) + int(not drv.converged)


def _collect(fn, items, jobs):
    results = _map(fn, items, jobs)
    return [r for r, _ in results], sum(u for _, u in results)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_fig1(args) -> Table:
    h_opt, h_drive, rho0, window, omega = _unitary_setup(args.e_m, args.omega, args.mu)
    taus = _thin(_steps(args.tau_min, args.tau_max, args.tau_step), args.quick)
    _check_tau_range(taus, window)
    rows, bad = _collect(partial(_fig1_row, h_opt=h_opt, h_drive=h_drive, rho0=rho0, grid=args.grid), taus, args.jobs)
    return Table(
        title="framed bound vs evolution time (unitary)",
        params=[("e_m", args.e_m), ("omega", omega), ("mu", args.mu), ("rho0", "|0><0|"),
                ("tau_min", args.tau_min), ("tau_max", args.tau_max), ("tau_step", args.tau_step)],
        columns=["tau", "bound_opt", "ratio_opt", "bound_h0h1", "ratio_h0h1"],
        rows=rows,
        unconverged=bad,
        x_column="tau",
        plot_columns=("ratio_opt", "ratio_h0h1"),
    )


def cmd_fig2(args) -> Table:
    pairs = _thin(_lambda_line(args.lambda0, args.points, args.pairs), args.quick and not args.pairs)
    if not (args.gamma > 0):
        raise ValidationError(f"gamma must be positive, got {args.gamma}")
    fn = partial(_damping_row, lambda0=args.lambda0, gamma=args.gamma, tau=args.tau, grid=args.grid)
    rows, bad = _collect(fn, pairs, args.jobs)
    return Table(
        title=f"amplitude damping, lambda0 = {format_value(args.lambda0)}",
        params=[("lambda0", args.lambda0), ("gamma", args.gamma), ("tau", args.tau), ("points", len(pairs))],
        columns=["lambda1", "lambda2", "ratio"],
        rows=rows,
        unconverged=bad,
        x_column="lambda1",
        plot_columns=("ratio",),
    )


def cmd_nonmarkov(args) -> Table:
    decay = dyn.OhmicDecay(args.cutoff, args.ohmicity)
    taus = _thin(_steps(args.tau_min, args.tau_max, args.tau_step), args.quick)
    if taus[0] <= 0:
        raise ValidationError(f"tau values must be positive, got {taus[0]}")
    rows, bad = _collect(partial(_nonmarkov_row, decay=decay, grid=args.grid), taus, args.jobs)
    return Table(
        title=f"ohmic decay (cutoff {format_value(args.cutoff)}, ohmicity {format_value(args.ohmicity)})",
        params=[("cutoff", args.cutoff), ("ohmicity", args.ohmicity), ("rho0", "I/3"),
                ("tau_min", args.tau_min), ("tau_max", args.tau_max), ("tau_step", args.tau_step)],
        columns=["tau", "gamma_tau", "ratio"],
        rows=rows,
        unconverged=bad,
        x_column="tau",
        plot_columns=("gamma_tau", "ratio"),
    )


def _parse_lambda20(text: str) -> float | None:
    if text == "pure":
        return None
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"lambda20 must be 'pure' or a number, got {text!r}") from None


def cmd_tau_alpha(args) -> Table:
    if args.study == "unitary":
        h_opt, h_drive, rho0, window, omega = _unitary_setup(args.e_m, args.omega, args.mu)
        taus = _thin(_steps(args.tau_min, args.tau_max, args.tau_step), args.quick)
        _check_tau_range(taus, window)
        rows, bad = _collect(partial(_alpha_unitary_row, h_opt=h_opt, h_drive=h_drive, rho0=rho0, grid=args.grid), taus, args.jobs)
        return Table(
            title="single-metric bound vs evolution time (unitary)",
            params=[("study", "unitary"), ("e_m", args.e_m), ("omega", omega), ("mu", args.mu), ("alpha", 1.0),
                    ("tau_min", args.tau_min), ("tau_max", args.tau_max), ("tau_step", args.tau_step)],
            columns=["tau", "bound_opt", "ratio_opt", "bound_h0h1", "ratio_h0h1"],
            rows=rows,
            unconverged=bad,
            x_column="tau",
            plot_columns=("ratio_opt", "ratio_h0h1"),
        )
    if not (args.gamma > 0):
        raise ValidationError(f"gamma must be positive, got {args.gamma}")
    pairs = _thin(_lambda_line(args.lambda0, args.points, args.pairs), args.quick and not args.pairs)
    common = [("lambda0", args.lambda0), ("gamma", args.gamma), ("tau", args.tau), ("points", len(pairs)),
              ("alpha", "larger endpoint purity")]
    if args.study == "amplitude":
        fn = partial(_alpha_damping_row, lambda0=args.lambda0, gamma=args.gamma, tau=args.tau, grid=args.grid)
        rows, bad = _collect(fn, pairs, args.jobs)
        return Table(
            title=f"amplitude damping, lambda0 = {format_value(args.lambda0)}",
            params=[("study", "amplitude")] + common,
            columns=["lambda1", "lambda2", "alpha", "ratio"],
            rows=rows,
            unconverged=bad,
            x_column="lambda1",
            plot_columns=("ratio",),
        )
    lambda20 = _parse_lambda20(args.lambda20)
    fn = partial(_alpha_dephasing_row, lambda0=args.lambda0, lambda20=lambda20,
                 gamma=args.gamma, tau=args.tau, grid=args.grid)
    rows, bad = _collect(fn, pairs, args.jobs)
    impure = sum(1 for r in rows if r[3] < 1.0 - PURE_TOL)
    notes = []
    if impure:
        notes.append(f"{impure} of {len(rows)} initial states are not pure")
        print(f"warning: {impure} of {len(rows)} initial states are not pure", file=sys.stderr)
    return Table(
        title=f"dephasing, lambda0 = {format_value(args.lambda0)}",
        params=[("study", "dephasing")] + common
        + [("lambda20", args.lambda20)],
        columns=["lambda1", "lambda2", "lambda20", "purity", "alpha", "ratio"],
        rows=rows,
        unconverged=bad,
        notes=notes,
        x_column="lambda1",
        plot_columns=("ratio",),
    )


def _read_states(paths: Sequence[str]):
    blocks = []
    for p in paths:
        try:
            text = Path(p).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read {p}: {exc.strerror}") from None
        blocks += [(p, b) for b in read_matrices(text.splitlines(), p)]
    if len(blocks) != 2:
        raise ValidationError(f"expected two matrices, found {len(blocks)}")
    states = []
    for src, b in blocks:
        a = check_hermitian_block(b, src)
        try:
            states.append(as_density(a))
        except ValidationError as exc:
            raise ValidationError(f"{src}:{b.line}: {exc}") from None
    if states[0].dim != states[1].dim:
        raise ValidationError(f"dimension mismatch: {states[0].dim} vs {states[1].dim}")
    return states


def distance_report(rho, sigma, alpha: float | None = None) -> str:
    """One-line summary of every distance between two states."""
    rho, sigma = as_density(rho), as_density(sigma)
    n = rho.dim
    if alpha is None:
        alpha = max(rho.purity, sigma.purity)
        alpha = 1.0 if alpha <= 1.0 / n + sg.ALPHA_MARGIN else min(alpha, 1.0)
    d_alpha = sg.distance_alpha(rho, sigma, alpha)
    alphas = sg.default_alphas(rho, sigma)
    d_bar = sg.framed_distance(rho, sigma, alphas=alphas)
    d_tilde, perm = sg.permuted_distance(rho, sigma, alphas=alphas)
    pair_alphas = ";".join(f"{i}-{j}:{format_value(alphas[i, j])}" for i in range(n) for j in range(i + 1, n))
    return (
        f"D_alpha={format_value(d_alpha)} alpha={format_value(alpha)} D_bar={format_value(d_bar)} "
        f"D_tilde={format_value(d_tilde)} permutation={','.join(map(str, perm))} pair_alphas={pair_alphas}"
    )


def cmd_distance(args) -> str:
    rho, sigma = _read_states(args.files)
    return distance_report(rho, sigma, args.alpha)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the invalid-input code, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


_VALUED_COMMON = {"--seed", "--grid", "--out", "--format", "--config", "--jobs"}


def _hoist_common(argv: list[str], commands) -> list[str]:
    """Move common options given before the subcommand to just after it."""
    k = 0
    while k < len(argv) and argv[k] not in commands:
        tok = argv[k]
        if not tok.startswith("--") or tok in ("--help", "--version"):
            return argv
        k += 2 if tok in _VALUED_COMMON else 1
    if k == 0 or k >= len(argv):
        return argv
    return [argv[k]] + argv[:k] + argv[k + 1:]


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--seed", type=int, default=verify.DEFAULT_SEED, help="seed for randomized checks (default %(default)s)")
    g.add_argument("--grid", type=int, default=qb.MIN_GRID, help="starting time-grid points, at least %(default)s")
    g.add_argument("--out", help="output path (default: standard output)")
    g.add_argument("--format", choices=("csv", "csv+svg"), default="csv", help="csv+svg also writes <out>.svg")
    g.add_argument("--quick", action="store_true", help="tenfold fewer verify samples; every third sweep point")
    g.add_argument("--config", help="file of 'key = value' lines; command-line flags win")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps (default 1)")
    return p


def _tau_range(p, default_max=3.0):
    p.add_argument("--tau-min", type=float, default=0.1, help="first evolution time (default %(default)s)")
    p.add_argument("--tau-max", type=float, default=default_max, help="last evolution time (default %(default)s)")
    p.add_argument("--tau-step", type=float, default=0.1, help="evolution-time step (default %(default)s)")


def _drive_options(p):
    p.add_argument("--e-m", type=float, default=1.0, help="energy scale E_m (default %(default)s)")
    p.add_argument("--omega", type=float, default=None, help="drive strength (default: E_m)")
    p.add_argument("--mu", type=float, default=0.5, help="middle level at mu*E_m (default %(default)s)")


def _lambda_options(p, default_points=21):
    p.add_argument("--lambda0", type=float, default=0.0, help="ground-state population (default %(default)s)")
    p.add_argument("--points", type=int, default=default_points, help="lambda1 samples on [0, 1 - lambda0]")
    p.add_argument("--pairs", help="explicit 'lambda1:lambda2,...' list instead of the sweep")
    p.add_argument("--gamma", type=float, default=1.0, help="decay rate (default %(default)s)")
    p.add_argument("--tau", type=float, default=1.0, help="evolution time (default %(default)s)")


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    common = _common_parser()
    parser = _Parser(prog="qslkit", description="Quantum speed limits in the framed angular metric.")
    parser.add_argument("--version", action="version", version=f"qslkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    subs = {}

    p = sub.add_parser("fig1", parents=[common], help="unitary bound vs time for H_T and H0+H1")
    _drive_options(p)
    _tau_range(p)
    subs["fig1"] = p

    p = sub.add_parser("fig2", parents=[common], help="amplitude-damping bound over initial populations")
    _lambda_options(p)
    subs["fig2"] = p

    p = sub.add_parser("nonmarkov", parents=[common], help="bound vs time under an ohmic-like decay rate")
    p.add_argument("--cutoff", type=float, default=1.0, help="cutoff frequency (default %(default)s)")
    p.add_argument("--ohmicity", type=float, default=4.0, help="ohmicity k (default %(default)s)")
    _tau_range(p)
    subs["nonmarkov"] = p

    p = sub.add_parser("tau-alpha", parents=[common], help="single-metric bound studies")
    p.add_argument("--study", choices=("amplitude", "dephasing", "unitary"), required=True)
    _lambda_options(p)
    p.add_argument("--lambda20", default="pure",
                   help="'pure' for the superposition with every coherence sqrt(lambda_i lambda_j), "
                        "or a number to set only the 0-2 coherence (default %(default)s)")
    _drive_options(p)
    _tau_range(p)
    subs["tau-alpha"] = p

    p = sub.add_parser("distance", parents=[common], help="all distances between two states in matrix files")
    p.add_argument("files", nargs="+", help="one file with two '# dim N' blocks, or two files with one each")
    p.add_argument("--alpha", type=float, default=None, help="alpha for D_alpha (default: larger purity)")
    subs["distance"] = p

    p = sub.add_parser("verify", parents=[common], help="run every oracle and property check")
    subs["verify"] = p
    return parser, subs


def _coerce(action: argparse.Action, text: str):
    if isinstance(action, argparse._StoreTrueAction):
        low = text.lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ValidationError(f"config value for {action.dest} must be a boolean, got {text!r}")
        return low in ("true", "1", "yes")
    value = action.type(text) if action.type else text
    if action.choices is not None and value not in action.choices:
        raise ValidationError(f"config value {text!r} for {action.dest} is not one of {sorted(action.choices)}")
    return value


def load_config(path: str, parser: argparse.ArgumentParser) -> dict:
    """Read ``key = value`` lines into parser defaults for one subcommand."""
    actions = {a.dest: a for a in parser._actions if a.dest not in ("help", "config")}
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        dest = key.lstrip("-").replace("-", "_")
        if dest not in actions or not actions[dest].option_strings:
            raise ValidationError(f"{path}:{lineno}: unknown option {key!r}")
        try:
            out[dest] = _coerce(actions[dest], value)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from None
    return out


def _validate_common(args):
    if args.grid < qb.MIN_GRID or args.grid - 1 > qb.MAX_INTERVALS:
        raise ValidationError(f"--grid must lie in [{qb.MIN_GRID}, {qb.MAX_INTERVALS + 1}], got {args.grid}")
    if args.jobs < 1:
        raise ValidationError(f"--jobs must be at least 1, got {args.jobs}")
    if args.format == "csv+svg" and not args.out:
        raise ValidationError("--format csv+svg needs --out")


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _svg_path(out: str) -> str:
    p = Path(out)
    return str(p.with_suffix(".svg")) if p.suffix else out + ".svg"


def _run(args) -> int:
    _validate_common(args)
    if args.command == "verify":
        reports = verify.run_all(args.seed, args.quick)
        _emit("".join(r.to_line() + "\n" for r in reports), args.out)
        return EXIT_OK if all(r.passed for r in reports if r.blocking) else EXIT_CHECK
    if args.command == "distance":
        _emit(cmd_distance(args) + "\n", args.out)
        return EXIT_OK
    table = {"fig1": cmd_fig1, "fig2": cmd_fig2, "nonmarkov": cmd_nonmarkov, "tau-alpha": cmd_tau_alpha}[args.command](args)
    _emit(render_csv(table.header(args.command, args), table.columns, table.rows), args.out)
    if args.format == "csv+svg":
        xi = table.columns.index(table.x_column)
        series = [(c, [r[table.columns.index(c)] for r in table.rows]) for c in table.plot_columns]
        _emit(render_svg(table.title, table.x_column, [r[xi] for r in table.rows], series), _svg_path(args.out))
    if table.unconverged:
        print(f"error: {table.unconverged} bound(s) did not converge before the grid cap", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser, subs = build_parser()
    argv = _hoist_common(list(sys.argv[1:] if argv is None else argv), subs)
    args = parser.parse_args(argv)
    try:
        if args.config:
            subs[args.command].set_defaults(**load_config(args.config, subs[args.command]))
            args = parser.parse_args(argv)
        return _run(args)
    except (ConvergenceError, FrameTrackingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except CrosscheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except QslError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
