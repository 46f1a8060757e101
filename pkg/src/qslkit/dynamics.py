"""Trajectory generators for unitary and open-system dynamics.

Every trajectory exposes the state, its analytic time derivative and, where
one is known in closed form, a continuous eigenframe. The batch methods
(``states``, ``derivatives``, ``frames``) work on whole time grids and are
what the bound computations use; the scalar methods wrap them in validated
matrix types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import FrameTrackingError, ValidationError
from .matrixcore import (
    DensityMatrix,
    HermitianOperator,
    UnitaryMatrix,
    _eigh_stack,
    as_density,
    as_hermitian,
)
from .stategeom import _checked_frame

TRACK_MIN_OVERLAP = 0.5
DEGENERATE_GAP = 1e-9
QUAD_TOL = 1e-10
_MONOTONE_SAMPLES = 257


# ---------------------------------------------------------------------------
# decay models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantDecay:
    """Markovian decay at a fixed rate ``gamma``."""

    gamma: float

    def __post_init__(self):
        if not (np.isfinite(self.gamma) and self.gamma > 0):
            raise ValidationError(f"decay rate must be positive, got {self.gamma!r}")


@dataclass(frozen=True)
class OhmicDecay:
    """Zero-temperature decay rate of an Ohmic-like bath.

    Attributes:
        cutoff: Cutoff energy ``omega_c``.
        ohmicity: Exponent ``k`` (``< 1`` sub-Ohmic, ``1`` Ohmic, ``> 1``
            super-Ohmic).
    """

    cutoff: float
    ohmicity: float

    def __post_init__(self):
        for name in ("cutoff", "ohmicity"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be positive, got {v!r}")


DecayModel = ConstantDecay | OhmicDecay


def decay_rate(decay: DecayModel, t):
    """Instantaneous rate ``gamma_t``; vectorized over ``t``.

    For the Ohmic model,
    ``gamma_t = wc (1 + wc^2 t^2)^(-k/2) Gamma(k) sin(k arctan(wc t))``,
    which turns negative once ``k arctan(wc t) > pi``.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or not np.all(np.isfinite(t_arr)):
        raise ValidationError("decay_rate needs finite t >= 0")
    if isinstance(decay, ConstantDecay):
        out = np.full_like(t_arr, decay.gamma)
    elif isinstance(decay, OhmicDecay):
        wc, k = decay.cutoff, decay.ohmicity
        x = wc * t_arr
        out = wc * (1.0 + x * x) ** (-0.5 * k) * math.gamma(k) * np.sin(k * np.arctan(x))
    else:
        raise ValidationError(f"unknown decay model {decay!r}")
    return float(out) if out.ndim == 0 else out


_GL_LO = np.polynomial.legendre.leggauss(8)
_GL_HI = np.polynomial.legendre.leggauss(16)


def _gauss(f, a, b, rule):
    x, w = rule
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[:, None] + half[:, None] * x[None, :]
    return half * (f(pts) @ w)


def _composite_quad(f, a, b, tol, max_depth=40):
    """Integrate ``f`` over many intervals ``[a_k, b_k]`` at once.

    Each interval is compared under 8- and 16-point Gauss-Legendre rules and
    bisected until the difference is below its share of ``tol``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(a.shape)
    owner = np.arange(a.size)
    budget = np.full(a.size, tol / max(a.size, 1))
    for _ in range(max_depth):
        if owner.size == 0:
            return out
        hi = _gauss(f, a, b, _GL_HI)
        lo = _gauss(f, a, b, _GL_LO)
        ok = np.abs(hi - lo) <= budget
        np.add.at(out, owner[ok], hi[ok])
        bad = ~ok
        mid = 0.5 * (a[bad] + b[bad])
        a = np.concatenate([a[bad], mid])
        b = np.concatenate([mid, b[bad]])
        owner = np.concatenate([owner[bad], owner[bad]])
        budget = np.concatenate([budget[bad], budget[bad]]) * 0.5
    if owner.size:
        np.add.at(out, owner, _gauss(f, a, b, _GL_HI))
    return out


def gamma_integral(decay: DecayModel, t):
    """Accumulated decay ``Gamma_t``, the integral of ``gamma`` over ``[0, t]``.

    Ohmic rates are integrated by adaptive composite Gauss-Legendre
    quadrature to an absolute tolerance of 1e-10 per requested point. For an
    array of times the integral is built up segment by segment between
    sorted time points. ``Gamma_t`` can decrease where ``gamma_t < 0``.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or not np.all(np.isfinite(t_arr)):
        raise ValidationError("gamma_integral needs finite t >= 0")
    if isinstance(decay, ConstantDecay):
        out = decay.gamma * t_arr
        return float(out) if out.ndim == 0 else out
    flat = t_arr.ravel()
    knots, inverse = np.unique(flat, return_inverse=True)
    starts = np.concatenate([[0.0], knots[:-1]])
    pieces = _composite_quad(lambda x: decay_rate(decay, x), starts, knots, QUAD_TOL)
    out = np.cumsum(pieces)[inverse].reshape(t_arr.shape)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# trajectory types
# ---------------------------------------------------------------------------


def _as_times(t, horizon):
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr < -1e-12 * max(1.0, horizon)) or np.any(arr > horizon * (1 + 1e-12) + 1e-12):
        raise ValidationError(f"time outside [0, {horizon}]")
    return np.clip(arr, 0.0, horizon)


class Trajectory:
    """A family of states ``rho_t`` on ``[0, horizon]``.

    Subclasses implement ``_states``, ``_derivatives`` and optionally
    ``_frames`` on 1-D float arrays of times.
    """

    kind = "custom"

    def __init__(self, dim: int, horizon: float):
        horizon = float(horizon)
        if not (np.isfinite(horizon) and horizon > 0):
            raise ValidationError(f"horizon must be positive, got {horizon!r}")
        self.dim = int(dim)
        self.horizon = horizon

    @property
    def declares_frame(self) -> bool:
        return False

    def states(self, ts) -> np.ndarray:
        return self._states(_as_times(ts, self.horizon))

    def derivatives(self, ts) -> np.ndarray:
        return self._derivatives(_as_times(ts, self.horizon))

    def frames(self, ts):
        if not self.declares_frame:
            return None
        return self._frames(_as_times(ts, self.horizon))

    def state(self, t: float) -> DensityMatrix:
        return DensityMatrix(self.states(t)[0])

    def derivative(self, t: float) -> HermitianOperator:
        return HermitianOperator(self.derivatives(t)[0])

    def frame(self, t: float):
        fr = self.frames(t)
        return None if fr is None else UnitaryMatrix(fr[0])

    def grid(self, m: int) -> np.ndarray:
        """``m`` uniform points on ``[0, horizon]``."""
        return np.linspace(0.0, self.horizon, int(m))

    def __repr__(self):
        return f"<{type(self).__name__} kind={self.kind} dim={self.dim} horizon={self.horizon:g}>"


class UnitaryTrajectory(Trajectory):
    """``rho_t = U_t rho_0 U_t^H`` under a piecewise-constant Hamiltonian."""

    kind = "unitary"

    def __init__(self, schedule, rho0: DensityMatrix, tau: float, frame0: np.ndarray):
        super().__init__(rho0.dim, tau)
        self.rho0 = rho0
        self.schedule = schedule
        self.frame0 = frame0
        self._ham = np.stack([h.data for h, _ in schedule])
        w, v = _eigh_stack(self._ham)
        self._w, self._v = w, v
        durations = np.array([d for _, d in schedule], dtype=float)
        self._starts = np.concatenate([[0.0], np.cumsum(durations)[:-1]])
        # propagators at the segment starts
        props = [np.eye(self.dim, dtype=complex)]
        for k in range(len(schedule) - 1):
            props.append(self._segment_prop(k, durations[k]) @ props[-1])
        self._start_props = np.stack(props)

    @property
    def declares_frame(self) -> bool:
        return True

    def _segment_prop(self, k, dt):
        v = self._v[k]
        return (v * np.exp(-1j * self._w[k] * dt)) @ v.conj().T

    def _segments(self, ts):
        idx = np.searchsorted(self._starts, ts, side="right") - 1
        return np.clip(idx, 0, len(self.schedule) - 1)

    def propagators(self, ts) -> np.ndarray:
        ts = _as_times(ts, self.horizon)
        seg = self._segments(ts)
        dt = ts - self._starts[seg]
        v = self._v[seg]
        ph = np.exp(-1j * self._w[seg] * dt[:, None])
        local = (v * ph[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2))
        return local @ self._start_props[seg]

    def hamiltonians(self, ts) -> np.ndarray:
        return self._ham[self._segments(_as_times(ts, self.horizon))]

    def _states(self, ts):
        u = self.propagators(ts)
        return u @ self.rho0.data @ np.conj(np.swapaxes(u, -1, -2))

    def _derivatives(self, ts):
        r = self._states(ts)
        h = self._ham[self._segments(ts)]
        return -1j * (h @ r - r @ h)

    def _frames(self, ts):
        return self.propagators(ts) @ self.frame0


def _normalize_schedule(h, tau):
    if isinstance(h, (list, tuple)):
        if len(h) == 0:
            raise ValidationError("empty Hamiltonian schedule")
        sched = []
        for item in h:
            try:
                op, dur = item
            except (TypeError, ValueError) as exc:
                raise ValidationError("schedule entries must be (hamiltonian, duration) pairs") from exc
            dur = float(dur)
            if not (np.isfinite(dur) and dur > 0):
                raise ValidationError(f"schedule durations must be positive, got {dur!r}")
            sched.append((as_hermitian(op), dur))
        if sum(d for _, d in sched) < tau * (1 - 1e-12):
            raise ValidationError("schedule durations sum to less than tau")
        return sched
    return [(as_hermitian(h), float(tau))]


def driven_hamiltonian(e_m: float = 1.0, omega: float = 1.0, mu: float = 0.5) -> np.ndarray:
    """Three-level drive ``mu E_m |1><1| + E_m |2><2| + Omega (|0><2| + |2><0|)``."""
    h = np.diag([0.0, mu * e_m, e_m]).astype(complex)
    h[0, 2] = h[2, 0] = omega
    return h


def unitary_trajectory(h, rho0, tau: float, *, frame0=None) -> UnitaryTrajectory:
    """Closed-system evolution under ``h`` (one Hamiltonian or a schedule).

    Args:
        h: A Hermitian matrix, or a sequence of ``(hamiltonian, duration)``
            pairs applied in order. Durations must cover ``[0, tau]``.
        rho0: Initial state.
        tau: Horizon.
        frame0: Eigenframe of ``rho0`` carried along as ``U_t frame0``;
            defaults to the eigenframe with non-increasing eigenvalues.
    """
    tau = float(tau)
    if not (np.isfinite(tau) and tau > 0):
        raise ValidationError(f"tau must be positive, got {tau!r}")
    rho0 = as_density(rho0)
    sched = _normalize_schedule(h, tau)
    for op, _ in sched:
        if op.dim != rho0.dim:
            raise ValidationError(f"Hamiltonian dimension {op.dim} does not match state dimension {rho0.dim}")
    phi = _checked_frame(rho0, frame0)
    return UnitaryTrajectory(sched, rho0, tau, phi)


@dataclass(frozen=True)
class ExponentialSchedule:
    """``p_t = exp(-rate t)``."""

    rate: float = 1.0

    def value(self, t):
        return np.exp(-self.rate * np.asarray(t, dtype=float))

    def slope(self, t):
        return -self.rate * self.value(t)


@dataclass(frozen=True)
class CallableSchedule:
    """A schedule given by ``value(t)`` and its analytic ``slope(t)``."""

    value_fn: Callable
    slope_fn: Callable

    def value(self, t):
        return np.asarray(np.vectorize(self.value_fn, otypes=[float])(t), dtype=float)

    def slope(self, t):
        return np.asarray(np.vectorize(self.slope_fn, otypes=[float])(t), dtype=float)


class DepolarizingTrajectory(Trajectory):
    """``rho_t = p_t rho_0 + (1 - p_t) I/N`` with a fixed eigenframe."""

    kind = "depolarizing"

    def __init__(self, rho0: DensityMatrix, schedule, tau: float, frame0: np.ndarray):
        super().__init__(rho0.dim, tau)
        self.rho0 = rho0
        self.schedule = schedule
        self.frame0 = frame0
        self._traceless = rho0.data - np.eye(self.dim) / self.dim

    @property
    def declares_frame(self) -> bool:
        return True

    def _states(self, ts):
        p = self.schedule.value(ts)
        return p[:, None, None] * self._traceless + np.eye(self.dim) / self.dim

    def _derivatives(self, ts):
        return self.schedule.slope(ts)[:, None, None] * self._traceless

    def _frames(self, ts):
        return np.broadcast_to(self.frame0, (ts.size, self.dim, self.dim)).copy()


def depolarizing_trajectory(rho0, p_schedule=None, tau: float = 1.0, *, frame0=None) -> DepolarizingTrajectory:
    """Depolarizing evolution toward the maximally mixed state.

    Args:
        rho0: Initial state.
        p_schedule: Object with vectorized ``value(t)`` and ``slope(t)``, or
            a ``(p, dp/dt)`` pair of scalar callables. Defaults to
            ``exp(-t)``. Must start at 1, stay in ``(0, 1]`` and be
            non-increasing on ``[0, tau]``.
        tau: Horizon.
        frame0: Eigenframe of ``rho0``; defaults to :func:`eigenframe`.

    Raises:
        ValidationError: the schedule is not monotone or leaves ``(0, 1]``.
    """
    rho0 = as_density(rho0)
    tau = float(tau)
    if not (np.isfinite(tau) and tau > 0):
        raise ValidationError(f"tau must be positive, got {tau!r}")
    if p_schedule is None:
        p_schedule = ExponentialSchedule()
    elif isinstance(p_schedule, tuple):
        p_schedule = CallableSchedule(*p_schedule)
    ts = np.linspace(0.0, tau, _MONOTONE_SAMPLES)
    p = p_schedule.value(ts)
    if abs(p[0] - 1.0) > 1e-12:
        raise ValidationError(f"schedule must start at p_0 = 1, got {p[0]!r}")
    if np.any(p <= 0) or np.any(p > 1 + 1e-12):
        raise ValidationError("schedule must stay in (0, 1]")
    if np.any(np.diff(p) > 1e-12) or np.any(p_schedule.slope(ts) > 1e-12):
        raise ValidationError("schedule must be monotone (non-increasing)")
    phi = _checked_frame(rho0, frame0)
    return DepolarizingTrajectory(rho0, p_schedule, tau, phi)


class AmplitudeDampingTrajectory(Trajectory):
    """Population decay toward level 0 from a diagonal initial state."""

    kind = "amplitude_damping"

    def __init__(self, lambdas: np.ndarray, decay: DecayModel, tau: float):
        super().__init__(lambdas.size, tau)
        self.lambdas = lambdas
        self.decay = decay
        self._excited = np.zeros(self.dim)
        self._excited[1:] = lambdas[1:]
        self._shape = self._excited.copy()
        self._shape[0] = -self._excited.sum()

    @property
    def declares_frame(self) -> bool:
        return True

    def survival(self, ts) -> np.ndarray:
        """``exp(-Gamma_t)`` on the given times."""
        return np.exp(-gamma_integral(self.decay, _as_times(ts, self.horizon)))

    def _states(self, ts):
        p = self.survival(ts)
        diag = p[:, None] * self._excited
        diag[:, 0] = 1.0 - p * self._excited.sum()
        out = np.zeros((ts.size, self.dim, self.dim), dtype=complex)
        idx = np.arange(self.dim)
        out[:, idx, idx] = diag
        return out

    def _derivatives(self, ts):
        rate = decay_rate(self.decay, ts) * self.survival(ts)
        out = np.zeros((ts.size, self.dim, self.dim), dtype=complex)
        idx = np.arange(self.dim)
        out[:, idx, idx] = -rate[:, None] * self._shape
        return out

    def _frames(self, ts):
        return np.broadcast_to(np.eye(self.dim, dtype=complex), (ts.size, self.dim, self.dim)).copy()


def amplitude_damping_trajectory(lambdas: Sequence[float], decay: DecayModel, tau: float) -> AmplitudeDampingTrajectory:
    """Amplitude damping of ``diag(lambdas)`` (level 0 is the ground state).

    The state is ``(1 - e^{-G} S)|0><0| + e^{-G} sum_{i>=1} lambda_i |i><i|``
    with ``S = sum_{i>=1} lambda_i`` and ``G = gamma_integral(decay, t)``.
    The declared frame is the computational basis.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size < 2:
        raise ValidationError("lambdas must be a vector of at least two populations")
    if np.any(lam < -1e-12) or abs(lam.sum() - 1.0) > 1e-10 or not np.all(np.isfinite(lam)):
        raise ValidationError(f"lambdas must form a probability vector, got {lam.tolist()}")
    tau = float(tau)
    if not (np.isfinite(tau) and tau > 0):
        raise ValidationError(f"tau must be positive, got {tau!r}")
    return AmplitudeDampingTrajectory(np.clip(lam, 0.0, None), decay, tau)


class DephasingTrajectory(Trajectory):
    """Fixed populations with coherences damped by ``exp(-gamma t)``."""

    kind = "dephasing"

    def __init__(self, rho0: DensityMatrix, gamma: float, tau: float):
        super().__init__(rho0.dim, tau)
        self.rho0 = rho0
        self.gamma = gamma
        d = np.diag(np.diag(rho0.data))
        self._diag = d
        self._offdiag = rho0.data - d

    @property
    def declares_frame(self) -> bool:
        return not np.any(self._offdiag)

    def _states(self, ts):
        p = np.exp(-self.gamma * ts)
        return self._diag + p[:, None, None] * self._offdiag

    def _derivatives(self, ts):
        return (-self.gamma * np.exp(-self.gamma * ts))[:, None, None] * self._offdiag

    def _frames(self, ts):
        return np.broadcast_to(np.eye(self.dim, dtype=complex), (ts.size, self.dim, self.dim)).copy()


def dephasing_trajectory(diag: Sequence[float], coherences: Mapping, gamma: float, tau: float) -> DephasingTrajectory:
    """Pure dephasing in the computational basis.

    Args:
        diag: Populations ``lambda_i``.
        coherences: ``{(i, j): lambda_ij}`` for ``i < j``; the ``(j, i)``
            entry is the conjugate.
        gamma: Dephasing rate.
        tau: Horizon.

    A frame is declared (the identity) only when there are no coherences;
    otherwise :func:`track_frame` falls back to eigenvector tracking.
    """
    d = np.asarray(diag, dtype=float)
    n = d.size
    gamma = float(gamma)
    if not (np.isfinite(gamma) and gamma > 0):
        raise ValidationError(f"gamma must be positive, got {gamma!r}")
    tau = float(tau)
    if not (np.isfinite(tau) and tau > 0):
        raise ValidationError(f"tau must be positive, got {tau!r}")
    m = np.diag(d).astype(complex)
    for (i, j), c in dict(coherences).items():
        if not (0 <= i < j < n):
            raise ValidationError(f"coherence key ({i}, {j}) must satisfy 0 <= i < j < {n}")
        m[i, j] = c
        m[j, i] = np.conj(c)
    return DephasingTrajectory(as_density(m), gamma, tau)


class CustomTrajectory(Trajectory):
    """Trajectory from user callables ``t -> matrix``."""

    kind = "custom"

    def __init__(self, state_fn, derivative_fn, tau, frame_fn=None):
        first = np.asarray(state_fn(0.0), dtype=complex)
        super().__init__(first.shape[0], tau)
        self._state_fn = state_fn
        self._derivative_fn = derivative_fn
        self._frame_fn = frame_fn

    @property
    def declares_frame(self) -> bool:
        return self._frame_fn is not None

    def _states(self, ts):
        return np.stack([np.asarray(self._state_fn(t), dtype=complex) for t in ts])

    def _derivatives(self, ts):
        return np.stack([np.asarray(self._derivative_fn(t), dtype=complex) for t in ts])

    def _frames(self, ts):
        return np.stack([np.asarray(self._frame_fn(t), dtype=complex) for t in ts])


def custom_trajectory(state_fn, derivative_fn, tau: float, frame_fn=None) -> CustomTrajectory:
    """Wrap callables returning ``rho_t``, ``d rho_t/dt`` and optionally ``Phi_t``."""
    return CustomTrajectory(state_fn, derivative_fn, tau, frame_fn)


# ---------------------------------------------------------------------------
# frame tracking
# ---------------------------------------------------------------------------


def _clusters(w):
    """Split ascending eigenvalues into runs separated by gaps > DEGENERATE_GAP."""
    groups = [[0]]
    for k in range(1, w.size):
        if w[k] - w[k - 1] <= DEGENERATE_GAP:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def _align(prev: np.ndarray, w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Reorder and rephase eigenvectors ``v`` to continue the frame ``prev``."""
    n = prev.shape[0]
    groups = _clusters(w)
    overlap = np.abs(prev.conj().T @ v) ** 2  # [old column, new vector]
    weight = np.stack([overlap[:, g].sum(axis=1) for g in groups], axis=1)
    capacity = [len(g) for g in groups]
    owner = np.full(n, -1)
    for flat in np.argsort(-weight, axis=None, kind="stable"):
        col, grp = divmod(int(flat), len(groups))
        if owner[col] < 0 and capacity[grp] > 0:
            owner[col] = grp
            capacity[grp] -= 1
    out = np.empty_like(prev)
    for gi, g in enumerate(groups):
        cols = np.flatnonzero(owner == gi)
        vg = v[:, g]
        if len(g) == 1:
            m = vg[:, 0].conj() @ prev[:, cols[0]]
            mag = abs(m)
            out[:, cols[0]] = vg[:, 0] * (m / mag if mag > 0 else 1.0)
        else:
            # polar factor: the unitary mix of vg closest to the old columns
            a, _, bh = np.linalg.svd(vg.conj().T @ prev[:, cols])
            out[:, cols] = vg @ (a @ bh)
    return out


def track_frame(traj: Trajectory, grid) -> np.ndarray:
    """Continuous eigenframes along ``grid``, as an ``(M, N, N)`` array.

    A declared frame is sampled directly. Otherwise each state is
    diagonalized and its eigenvectors are matched to the previous frame by
    greedy maximal overlap, with phases chosen so that ``<phi_prev|phi_new>``
    is real and positive. Near-degenerate eigenvalues (gap <= 1e-9) are
    matched as a block and aligned by the polar factor of their overlap.

    Raises:
        FrameTrackingError: some column overlap dropped below 0.5.
    """
    ts = np.asarray(grid, dtype=float)
    if ts.ndim != 1 or ts.size < 2:
        raise ValidationError("track_frame needs at least two time points")
    declared = traj.frames(ts)
    if declared is not None:
        return declared
    return track_states(traj.states(ts), ts, start_derivative=traj.derivatives(ts[:1])[0])


def _resolve_start(frame: np.ndarray, w: np.ndarray, drho: np.ndarray) -> np.ndarray:
    """Rotate degenerate blocks of ``frame`` onto the branches picked by ``drho``.

    ``w`` holds the eigenvalues of the frame columns in ascending order
    (negate them for a non-increasing frame); the derivative eigenvectors go
    in the same direction as the frame, largest derivative first.

    Inside an eigenvalue cluster any basis is an eigenbasis, but for ``t > 0``
    the eigenvectors follow the eigenvectors of the derivative projected on
    the cluster. Starting anywhere else puts a jump at ``t = 0`` that only
    shrinks like the grid step.
    """
    out = frame.copy()
    for g in _clusters(w):
        if len(g) < 2:
            continue
        cols = frame[:, g]
        dw, dv = np.linalg.eigh(cols.conj().T @ drho @ cols)
        out[:, g] = cols @ dv[:, ::-1]  # largest slope gets the larger eigenvalue
    return out


def track_states(states: np.ndarray, ts=None, *, start_derivative=None) -> np.ndarray:
    """Eigenframe continuation over a precomputed ``(M, N, N)`` state stack.

    The first frame orders eigenvalues non-increasingly; later frames follow
    the matching rules of :func:`track_frame`. When the first state is
    degenerate, ``start_derivative`` (``d rho/dt`` at the first point) fixes
    the basis inside each degenerate block. ``ts`` only labels errors.
    """
    states = np.asarray(states)
    if ts is None:
        ts = np.arange(states.shape[0], dtype=float)
    w, v = _eigh_stack(states)
    frames = np.empty_like(v)
    first = np.argsort(-w[0], kind="stable")
    frames[0] = v[0][:, first]
    if start_derivative is not None:
        frames[0] = _resolve_start(frames[0], -w[0][first], np.asarray(start_derivative, dtype=complex))
    for k in range(1, ts.size):
        frames[k] = _align(frames[k - 1], w[k], v[k])
        ov = np.abs(np.einsum("ij,ij->j", frames[k - 1].conj(), frames[k]))
        if ov.min() < TRACK_MIN_OVERLAP:
            raise FrameTrackingError(
                f"frame overlap {ov.min():.3f} < {TRACK_MIN_OVERLAP} between t={ts[k - 1]:.6g} and t={ts[k]:.6g}; refine the grid"
            )
    return frames


__all__ = [
    "AmplitudeDampingTrajectory",
    "CallableSchedule",
    "ConstantDecay",
    "CustomTrajectory",
    "DecayModel",
    "DephasingTrajectory",
    "DepolarizingTrajectory",
    "ExponentialSchedule",
    "OhmicDecay",
    "Trajectory",
    "UnitaryTrajectory",
    "amplitude_damping_trajectory",
    "custom_trajectory",
    "decay_rate",
    "dephasing_trajectory",
    "driven_hamiltonian",
    "depolarizing_trajectory",
    "gamma_integral",
    "track_frame",
    "track_states",
    "unitary_trajectory",
]
