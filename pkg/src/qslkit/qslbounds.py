"""Speed-limit bounds built on the angular state distance.

Two bounds are computed for a trajectory on ``[0, tau]``:

* ``tau_alpha``: endpoint distance over mean speed, both in one fixed
  ``alpha`` metric.
* ``tau_qsl``: the same ratio summed over the projective matrices of every
  ordered pair, with frames carried continuously along the trajectory.

Mean speeds are path lengths over ``tau``; path lengths are sums of angles
between consecutive grid states, refined by grid doubling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .dynamics import Trajectory, UnitaryTrajectory, track_states, unitary_trajectory
from .errors import CrosscheckError, DegenerateBoundError, FrameTrackingError, ValidationError
from .matrixcore import (
    UnitaryMatrix,
    _eigh_stack,
    as_density,
    as_hermitian,
    fourier_matrix,
    permutation_unitary,
)
from .stategeom import (
    alpha_assignment,
    check_alpha,
    default_alphas,
    eigenframe,
    f_norm_squared,
    permuted_distance,
)

MIN_GRID = 65
MAX_INTERVALS = 2**15
REFINE_TOL = 1e-6
RADICAND_TOL = 1e-12
PAIR_DEGENERATE_TOL = 1e-12
CROSSCHECK_TOL = 1e-4
ORTHOGONAL_TOL = 1e-6
AVERAGE_TOL = 1e-8
AVERAGE_START = 16
DISTANCE_FLOOR = 1e-12  # endpoint distances below this are roundoff


@dataclass(frozen=True)
class QslReport:
    """Outcome of one bound evaluation.

    ``ratio = bound / actual_tau``; a valid bound has ``ratio <= 1`` up to
    numerics. ``path_history`` lists the path length at each grid level.
    """

    bound: float
    actual_tau: float
    ratio: float
    distance: float
    mean_speed: float
    grid_points: int
    converged: bool
    refinements: int
    path_history: tuple = ()
    permutation: tuple | None = None
    reference_distance: float | None = None
    pairs_used: int | None = None
    extras: dict = field(default_factory=dict)

    @property
    def path_length(self) -> float:
        return self.mean_speed * self.actual_tau


@dataclass(frozen=True)
class EnergySpec:
    """Energies assigned to the frame directions of a saturating Hamiltonian.

    Energies must be finite and pairwise distinct; equal energies leave the
    corresponding pairs frozen, which defeats saturation.
    """

    energies: tuple

    def __post_init__(self):
        e = tuple(float(x) for x in self.energies)
        object.__setattr__(self, "energies", e)
        if len(e) < 2:
            raise ValidationError("need at least two energies")
        if not all(math.isfinite(x) for x in e):
            raise ValidationError("energies must be finite")
        if len(set(e)) != len(e):
            raise ValidationError(f"energies must be pairwise distinct, got {list(e)}")

    @property
    def max_gap(self) -> float:
        return max(self.energies) - min(self.energies)

    @property
    def saturation_window(self) -> float:
        """Largest horizon for which every pair angle stays within ``pi``."""
        return math.pi / self.max_gap


def _ratio(bound, tau):
    return bound / tau


def _bound(tau, distance, path):
    if path <= 0.0:
        if distance <= DISTANCE_FLOOR:
            return 0.0
        raise DegenerateBoundError(f"zero path length with nonzero distance {distance:.3e}")
    return tau * distance / path


# ---------------------------------------------------------------------------
# speeds
# ---------------------------------------------------------------------------


def speed_alpha(rho, rhodot, alpha: float) -> float:
    """Instantaneous speed ``|d F_alpha/dt|`` of the unit image.

    ``speed^2 = Tr rhodot^2/|F|^2 - (1 - 4(alpha - 1/N)/N) (Tr rho rhodot)^2/|F|^4``

    Raises:
        ValidationError: ``rhodot`` is not traceless or the radicand is
            negative beyond roundoff.
    """
    rho = as_density(rho)
    rd = as_hermitian(rhodot).data
    n = rho.dim
    alpha = check_alpha(alpha, n)
    scale = 1.0 + float(np.max(np.abs(rd)))
    if abs(np.trace(rd)) > 1e-10 * scale:
        raise ValidationError("rhodot must be traceless")
    r = rho.data
    f2 = f_norm_squared(rho.purity, alpha, n)
    tr_dd = float(np.sum(np.abs(rd) ** 2))
    tr_rd = float(np.real(np.sum(r.T * rd)))
    coef = 1.0 - 4.0 / n * (alpha - 1.0 / n)
    rad = tr_dd / f2 - coef * tr_rd**2 / f2**2
    if rad < 0:
        if rad < -RADICAND_TOL * max(1.0, tr_dd / f2):
            raise ValidationError(f"negative speed radicand {rad:.3e}")
        rad = 0.0
    return math.sqrt(rad)


def energy_variance(h, state) -> float:
    """Energy spread ``sqrt(Tr H^2 rho^2 - Tr (H rho)^2)``.

    Raises:
        ValidationError: dimension mismatch or a strongly negative radicand.
    """
    h = as_hermitian(h).data
    r = as_density(state).data
    if h.shape != r.shape:
        raise ValidationError(f"dimension mismatch: {h.shape[0]} vs {r.shape[0]}")
    return _energy_spread(h, r[None])[0]


def _energy_spread(h, rs):
    hr = h @ rs
    a = np.real(np.einsum("kij,kji->k", hr, np.conj(np.swapaxes(hr, -1, -2))))
    b = np.real(np.einsum("kij,kji->k", hr, hr))
    rad = a - b
    floor = -RADICAND_TOL * np.maximum(1.0, np.abs(a))
    if np.any(rad < floor):
        raise ValidationError(f"negative energy-variance radicand {rad.min():.3e}")
    return np.sqrt(np.clip(rad, 0.0, None))


# ---------------------------------------------------------------------------
# grid refinement
# ---------------------------------------------------------------------------


class _Grid:
    """Uniform grid on ``[0, tau]`` whose states are reused across doublings."""

    def __init__(self, traj: Trajectory, points: int):
        if points < MIN_GRID:
            raise ValidationError(f"grid must have at least {MIN_GRID} points, got {points}")
        if points - 1 > MAX_INTERVALS:
            raise ValidationError(f"grid exceeds {MAX_INTERVALS} intervals")
        self.traj = traj
        self.ts = np.linspace(0.0, traj.horizon, int(points))
        self.states = traj.states(self.ts)
        self.frames = traj.frames(self.ts)
        self.start_derivative = None if self.frames is not None else traj.derivatives(self.ts[:1])[0]

    @property
    def intervals(self) -> int:
        return self.ts.size - 1

    def can_refine(self) -> bool:
        return 2 * self.intervals <= MAX_INTERVALS

    def refine(self):
        mids = 0.5 * (self.ts[:-1] + self.ts[1:])
        ts = np.empty(2 * self.ts.size - 1)
        ts[0::2] = self.ts
        ts[1::2] = mids
        ts[-1] = self.traj.horizon
        states = np.empty((ts.size,) + self.states.shape[1:], dtype=complex)
        states[0::2] = self.states
        states[1::2] = self.traj.states(mids)
        if self.frames is not None:
            frames = np.empty_like(states)
            frames[0::2] = self.frames
            frames[1::2] = self.traj.frames(mids)
            self.frames = frames
        self.ts, self.states = ts, states


def _refine_loop(grid: _Grid, evaluate):
    """Double ``grid`` until ``evaluate`` (returning ``(bound, path)``) settles.

    At least one doubling is always done. Frame-tracking failures on the
    starting grid trigger refinement and propagate only at the cap. Returns
    the final evaluation plus convergence metadata.
    """
    refinements = 0
    while True:
        try:
            bound, path, extra = evaluate(grid)
            break
        except FrameTrackingError:
            # a coarse grid can lose the frame; retry finer before giving up
            if not grid.can_refine():
                raise
            grid.refine()
            refinements += 1
    history = [path]
    converged = False
    while grid.can_refine():
        grid.refine()
        refinements += 1
        new_bound, path, extra = evaluate(grid)
        history.append(path)
        change = abs(new_bound - bound)
        bound = new_bound
        if change <= REFINE_TOL * abs(bound) or (bound == 0.0 and change == 0.0):
            converged = True
            break
    return bound, path, extra, refinements, converged, tuple(history)


# ---------------------------------------------------------------------------
# the two bounds
# ---------------------------------------------------------------------------


def tau_alpha(traj: Trajectory, alpha: float, grid: int = MIN_GRID) -> QslReport:
    """Single-metric bound: ``tau * D_alpha(rho_0, rho_tau) / path length``.

    Raises:
        DegenerateBoundError: zero path length with nonzero distance.
    """
    alpha = check_alpha(alpha, traj.dim)
    tau = traj.horizon
    g = _Grid(traj, grid)
    distance = float(kernels.curve_length(g.states[[0, -1]], alpha))

    def evaluate(gr):
        path = float(kernels.curve_length(gr.states, alpha))
        return _bound(tau, distance, path), path, None

    bound, path, _, refinements, converged, history = _refine_loop(g, evaluate)
    return QslReport(
        bound=bound,
        actual_tau=tau,
        ratio=_ratio(bound, tau),
        distance=distance,
        mean_speed=path / tau,
        grid_points=g.ts.size,
        converged=converged,
        refinements=refinements,
        path_history=history,
    )


def tau_qsl(traj: Trajectory, grid: int = MIN_GRID, alphas=None, *, basis=None) -> QslReport:
    """Framed bound summed over all ordered pairs of projective matrices.

    Frames come from the trajectory's declared eigenframe when it has one,
    otherwise from eigenvector tracking on each grid level. ``alphas``
    defaults to the per-pair maximum of the endpoint projective purities.

    Raises:
        FrameTrackingError: tracking lost continuity on the final grid.
        DegenerateBoundError: zero path length with nonzero distance.
    """
    tau = traj.horizon
    n = traj.dim
    b = fourier_matrix(n) if basis is None else np.asarray(basis, dtype=complex)
    fixed = None if alphas is None else alpha_assignment(alphas, n)
    g = _Grid(traj, grid)

    def evaluate(gr):
        frames = gr.frames if gr.frames is not None else track_states(gr.states, gr.ts, start_derivative=gr.start_derivative)
        ends = gr.states[[0, -1]]
        end_frames = frames[[0, -1]]
        al = fixed if fixed is not None else default_alphas(ends[0], ends[1], (end_frames[0], end_frames[1]), basis=b)
        distance = float(kernels.pair_curve_lengths(ends, end_frames, b, al).sum())
        path = float(kernels.pair_curve_lengths(gr.states, frames, b, al).sum())
        return _bound(tau, distance, path), path, (distance, al)

    bound, path, (distance, al), refinements, converged, history = _refine_loop(g, evaluate)
    return QslReport(
        bound=bound,
        actual_tau=tau,
        ratio=_ratio(bound, tau),
        distance=distance,
        mean_speed=path / tau,
        grid_points=g.ts.size,
        converged=converged,
        refinements=refinements,
        path_history=history,
        extras={"alphas": al},
    )


# ---------------------------------------------------------------------------
# closed systems
# ---------------------------------------------------------------------------


def _closed_terms(traj: UnitaryTrajectory, basis: np.ndarray):
    """Per-pair numerators and integrated speeds for a unitary trajectory.

    Returns ``(distance, path, used)`` where ``used`` counts the
    non-degenerate ordered pairs.
    """
    n = traj.dim
    tau = traj.horizon
    phi0 = traj.frame0
    rho0 = traj.rho0.data
    pairs0 = kernels.pair_matrices(rho0[None], phi0[None], basis)[0]
    purity = np.sum(np.abs(pairs0) ** 2, axis=(-2, -1))
    excess = purity - 1.0 / n
    live = (excess > PAIR_DEGENERATE_TOL) & ~np.eye(n, dtype=bool)
    if not live.any():
        raise DegenerateBoundError("every projective pair is maximally mixed; the bound is undefined")
    al = np.where(live, np.minimum(purity, 1.0), 1.0)
    np.fill_diagonal(al, np.nan)

    ends = traj.states([0.0, tau])
    end_frames = traj.frames([0.0, tau])
    per_pair = kernels.pair_curve_lengths(ends, end_frames, basis, al)
    distance = float(per_pair[live].sum())

    # energy spread is constant while the Hamiltonian is; integrate segmentwise
    starts = traj._starts
    stops = np.minimum(np.append(starts[1:], np.inf), tau)
    path = 0.0
    for k, (s, e) in enumerate(zip(starts, stops)):
        if s >= tau:
            break
        u = traj.propagators([s])[0]
        h = traj._ham[k]
        spread = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if live[i, j]:
                    r = u @ pairs0[i, j] @ u.conj().T
                    spread[i, j] = _energy_spread(h, r[None])[0]
        speed = np.sqrt(2.0) * spread[live] / np.sqrt(excess[live])
        path += float(speed.sum()) * (e - s)
    return distance, path, int(live.sum())


def tau_qsl_closed(h_schedule, rho0, tau: float, grid: int = MIN_GRID, *, frame0=None, crosscheck: bool = False) -> QslReport:
    """Closed-system bound with per-pair speeds from the energy spread.

    Pair speeds are ``sqrt(2) dE([rho_t]_ij) / sqrt(Tr [rho_0]_ij^2 - 1/N)``
    with ``alpha_ij = Tr [rho_0]_ij^2``. Pairs whose projective matrix is
    maximally mixed carry no motion and are skipped.

    Args:
        crosscheck: Also run :func:`tau_qsl` on the same trajectory (with
            ``grid`` points) and raise if the bounds differ by more than
            1e-4 relative.

    Raises:
        DegenerateBoundError: all pairs are maximally mixed.
        CrosscheckError: the generic bound disagrees.
    """
    traj = unitary_trajectory(h_schedule, rho0, tau, frame0=frame0)
    b = fourier_matrix(traj.dim)
    distance, path, used = _closed_terms(traj, b)
    bound = _bound(traj.horizon, distance, path)
    extras = {}
    if crosscheck:
        generic = tau_qsl(traj, grid)
        scale = max(abs(bound), abs(generic.bound), 1e-300)
        gap = abs(bound - generic.bound)
        extras["generic_bound"] = generic.bound
        if gap > CROSSCHECK_TOL * scale and gap > 1e-12:
            raise CrosscheckError(f"closed-form bound {bound!r} vs generic {generic.bound!r}")
    return QslReport(
        bound=bound,
        actual_tau=traj.horizon,
        ratio=_ratio(bound, traj.horizon),
        distance=distance,
        mean_speed=path / traj.horizon,
        grid_points=0,
        converged=True,
        refinements=0,
        pairs_used=used,
        extras=extras,
    )


def saturating_hamiltonian(rho0, spec: EnergySpec, *, frame=None) -> np.ndarray:
    """``H = sum_i E_i Phi|i_F><i_F|Phi^H`` with ``Phi`` the eigenframe of ``rho0``.

    Under ``H`` every projective pair turns at the constant angular rate
    ``|E_i - E_j|``, so the framed bound equals the elapsed time while
    ``tau * max gap <= pi``.
    """
    rho0 = as_density(rho0)
    if len(spec.energies) != rho0.dim:
        raise ValidationError(f"need {rho0.dim} energies, got {len(spec.energies)}")
    phi = eigenframe(rho0).data if frame is None else np.asarray(frame, dtype=complex)
    g = phi @ fourier_matrix(rho0.dim)
    h = (g * np.asarray(spec.energies)) @ g.conj().T
    return as_hermitian(0.5 * (h + h.conj().T))


def _hamiltonian_frame(h) -> np.ndarray:
    _, v = _eigh_stack(as_hermitian(h).data[None])
    return v[0]


def saturating_initial_frame(h) -> UnitaryMatrix:
    """Frame ``Psi U^F`` that pairs with :func:`saturating_initial_state`.

    ``Psi`` is the eigenframe of ``h``. Pass the result as ``frame0`` when
    building the trajectory.
    """
    psi = _hamiltonian_frame(h)
    return UnitaryMatrix(psi @ fourier_matrix(psi.shape[0]))


def saturating_initial_state(h, lambda0: Sequence[float]):
    """A state with spectrum ``lambda0`` whose evolution under ``h`` saturates.

    Returns ``Psi U^F diag(lambda0) U^F^H Psi^H`` with ``Psi`` the
    eigenframe of ``h``. In the frame ``Psi U^F`` the Hamiltonian again has
    the DFT-conjugate form, because ``(U^F)^2`` is a permutation.
    """
    lam = np.asarray(lambda0, dtype=float)
    h = as_hermitian(h)
    if lam.shape != (h.dim,):
        raise ValidationError(f"need {h.dim} eigenvalues, got shape {lam.shape}")
    if np.any(lam < -1e-12) or abs(lam.sum() - 1.0) > 1e-10:
        raise ValidationError("lambda0 must be a probability vector")
    g = saturating_initial_frame(h).data
    return as_density((g * lam) @ g.conj().T)


# ---------------------------------------------------------------------------
# orthogonal pure states
# ---------------------------------------------------------------------------


def orthogonal_reference_distance(n: int) -> float:
    """Closed-form orthogonal-state distance ``(2 pi/3)(N-1)(N^2-1)``.

    Agrees with principal-branch evaluation only for ``N = 2``; for larger
    ``N`` the per-pair angles it sums exceed ``pi`` and are not reachable by
    the distance. Reported for comparison only.
    """
    n = int(n)
    if n < 2:
        raise ValidationError("n must be >= 2")
    return 2.0 * math.pi / 3.0 * (n - 1) * (n * n - 1)


def tau_qsl_orthogonal(h_schedule, rho0, tau: float, grid: int = MIN_GRID, *, frame0=None) -> QslReport:
    """Closed-system bound between a pure state and an orthogonal endpoint.

    The numerator is the permutation-maximized framed distance of the
    endpoints; the winning permutation is reused to build the projective
    pairs in the denominator. The closed-form reference distance is
    attached as ``reference_distance``.

    Raises:
        ValidationError: ``rho0`` is not pure or the endpoint is not
            orthogonal to it (``Tr rho_0 rho_tau > 1e-6``).
    """
    rho0 = as_density(rho0)
    if rho0.purity < 1.0 - 1e-10:
        raise ValidationError(f"initial state must be pure (purity {rho0.purity:.12g})")
    traj = unitary_trajectory(h_schedule, rho0, tau, frame0=frame0)
    ends = traj.states([0.0, traj.horizon])
    overlap = float(np.real(np.trace(ends[0] @ ends[1])))
    if overlap > ORTHOGONAL_TOL:
        raise ValidationError(f"endpoint is not orthogonal to the initial state (overlap {overlap:.3e})")
    end_frames = traj.frames([0.0, traj.horizon])
    distance, perm = permuted_distance(ends[0], ends[1], frames=(end_frames[0], end_frames[1]))
    b = permutation_unitary(perm).data @ fourier_matrix(traj.dim)
    _, path, used = _closed_terms(traj, b)
    bound = _bound(traj.horizon, distance, path)
    return QslReport(
        bound=bound,
        actual_tau=traj.horizon,
        ratio=_ratio(bound, traj.horizon),
        distance=distance,
        mean_speed=path / traj.horizon,
        grid_points=0,
        converged=True,
        refinements=0,
        permutation=tuple(perm),
        reference_distance=orthogonal_reference_distance(traj.dim),
        pairs_used=used,
    )


# ---------------------------------------------------------------------------
# time averages
# ---------------------------------------------------------------------------


def _sample(f: Callable, ts: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(ts), dtype=float)
        if vals.shape != ts.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(f(t)) for t in ts])
    if not np.all(np.isfinite(vals)):
        raise ValidationError("non-finite sample in time_average")
    return vals


def time_average(f: Callable, tau: float, tolerance: float = AVERAGE_TOL) -> float:
    """``(1/tau) * integral of f over [0, tau]`` by trapezoid doubling.

    Starts from 16 intervals and doubles (reusing samples) until successive
    estimates differ by less than ``tolerance`` relative, up to 2^15
    intervals; a warning is issued if that cap is hit first.
    """
    tau = float(tau)
    if not (np.isfinite(tau) and tau > 0):
        raise ValidationError(f"tau must be positive, got {tau!r}")
    m = AVERAGE_START
    ts = np.linspace(0.0, tau, m + 1)
    vals = _sample(f, ts)
    total = 0.5 * (vals[0] + vals[-1]) + vals[1:-1].sum()
    est = total / m
    mag = float(np.mean(np.abs(vals)))
    while 2 * m <= MAX_INTERVALS:
        h = tau / (2 * m)
        mids = _sample(f, h * (2 * np.arange(m) + 1))
        total += mids.sum()
        m *= 2
        new = total / m
        mag = max(mag, float(np.mean(np.abs(mids))))
        done = abs(new - est) <= tolerance * abs(new) + 1e-15 * mag
        est = new
        if done:
            return float(est)
    warnings.warn(f"time_average did not converge within {MAX_INTERVALS} intervals", RuntimeWarning, stacklevel=2)
    return float(est)


__all__ = [
    "EnergySpec",
    "QslReport",
    "energy_variance",
    "orthogonal_reference_distance",
    "saturating_hamiltonian",
    "saturating_initial_frame",
    "saturating_initial_state",
    "speed_alpha",
    "tau_alpha",
    "tau_qsl",
    "tau_qsl_closed",
    "tau_qsl_orthogonal",
    "time_average",
]
