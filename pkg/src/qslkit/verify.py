"""Independent oracles, property suites and closed-form cross-checks.

Every check returns a :class:`CheckReport`. Reports serialize to one line
of ``key=value`` fields in this order::

    check cases worst tol pass blocking seed

``worst`` is the largest violation seen (how far the checked quantity sat
past its target; ``<= tol`` means pass) and ``seed`` is the case seed that
produced it when the check failed, ``-`` otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import dynamics as dyn
from . import qslbounds as qb
from . import stategeom as sg
from .errors import ValidationError
from .matrixcore import (
    MAX_DIM,
    DensityMatrix,
    UnitaryMatrix,
    fourier_matrix,
    permutation_unitary,
    random_density,
    random_hermitian,
    random_unitary,
    uniforms,
)

DEFAULT_SEED = 20240917


def case_seed(*parts: int) -> int:
    """Deterministic 64-bit seed derived from integer parts."""
    ss = np.random.SeedSequence([int(p) % 2**63 for p in parts])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check."""

    name: str
    cases: int
    worst: float
    tolerance: float
    passed: bool
    seed: int | None = None
    blocking: bool = True
    note: str = ""

    def to_line(self) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        line = (
            f"check={self.name} cases={self.cases} worst={self.worst:.6e} tol={self.tolerance:.1e} "
            f"pass={'true' if self.passed else 'false'} blocking={'true' if self.blocking else 'false'} seed={seed}"
        )
        if self.note:
            line += f" note={self.note}"
        return line


class _Tally:
    """Running worst violation for one check."""

    def __init__(self, name, tolerance, blocking=True):
        self.name = name
        self.tolerance = tolerance
        self.blocking = blocking
        self.cases = 0
        self.worst = -math.inf
        self.seed = None

    def add(self, violation: float, seed: int):
        self.cases += 1
        if not (violation <= self.worst) or math.isnan(violation):
            if math.isnan(violation):
                violation = math.inf
            self.worst = violation
            self.seed = seed

    def report(self, note="") -> CheckReport:
        worst = self.worst if self.cases else 0.0
        passed = worst <= self.tolerance
        return CheckReport(
            name=self.name,
            cases=self.cases,
            worst=worst,
            tolerance=self.tolerance,
            passed=passed,
            seed=None if passed else self.seed,
            blocking=self.blocking,
            note=note,
        )


def _random_state(n: int, seed: int):
    """Random state whose rank is itself drawn from the seed."""
    rank = 1 + int(uniforms(case_seed(seed, 1), 1)[0] * n)
    return random_density(n, rank, seed)


# ---------------------------------------------------------------------------
# finite-difference speed oracle
# ---------------------------------------------------------------------------


def finite_diff_speed(traj: dyn.Trajectory, t: float, h: float, alpha: float) -> float:
    """Central chord estimate ``D_alpha(rho_{t-h}, rho_{t+h}) / (2h)``.

    Raises:
        ValidationError: ``[t - h, t + h]`` is not inside ``[0, tau]``.
    """
    if h <= 0 or t - h < 0 or t + h > traj.horizon:
        raise ValidationError(f"[t-h, t+h] = [{t - h}, {t + h}] is outside [0, {traj.horizon}]")
    ends = traj.states([t - h, t + h])
    return sg.distance_alpha(ends[0], ends[1], alpha) / (2.0 * h)


def random_trajectory(kind: str, seed: int, n: int | None = None, tau: float | None = None) -> dyn.Trajectory:
    """Seeded random member of one dynamics family.

    ``kind`` is one of ``unitary``, ``depolarizing``, ``amplitude_damping``,
    ``dephasing``.
    """
    u = uniforms(case_seed(seed, 7), 8)
    if n is None:
        n = 2 + int(u[0] * 3)
    if tau is None:
        tau = 0.2 + 1.8 * u[1]
    if kind == "unitary":
        return dyn.unitary_trajectory(random_hermitian(n, case_seed(seed, 2)), _random_state(n, seed), tau)
    if kind == "depolarizing":
        return dyn.depolarizing_trajectory(_random_state(n, seed), dyn.ExponentialSchedule(0.2 + 2.8 * u[2]), tau)
    if kind == "amplitude_damping":
        w = -np.log1p(-uniforms(case_seed(seed, 3), n))
        lam = w / w.sum()
        if u[3] < 0.5:
            decay = dyn.ConstantDecay(0.2 + 2.8 * u[4])
        else:
            decay = dyn.OhmicDecay(0.5 + 1.5 * u[4], 0.5 + 4.5 * u[5])
        return dyn.amplitude_damping_trajectory(lam, decay, tau)
    if kind == "dephasing":
        r = _random_state(n, seed).data
        coh = {(i, j): r[i, j] for i in range(n) for j in range(i + 1, n)}
        return dyn.dephasing_trajectory(np.real(np.diag(r)), coh, 0.2 + 2.8 * u[2], tau)
    raise ValidationError(f"unknown dynamics family {kind!r}")


FAMILIES = ("unitary", "depolarizing", "amplitude_damping", "dephasing")


def speed_oracle_suite(seed: int = DEFAULT_SEED, cases: int = 100, h: float = 1e-6, tol: float = 1e-5) -> list[CheckReport]:
    """``speed_alpha`` against :func:`finite_diff_speed`, per dynamics family.

    The violation is the relative error ``|fd - speed| / speed``.
    """
    out = []
    for fam_idx, kind in enumerate(FAMILIES):
        tally = _Tally(f"speed_oracle_{kind}", tol)
        for k in range(cases):
            s = case_seed(seed, 31, fam_idx, k)
            traj = random_trajectory(kind, s)
            u = uniforms(case_seed(s, 5), 2)
            n = traj.dim
            alpha = 1.0 / n + 0.02 + (1.0 - 1.0 / n - 0.02) * u[0]
            t = h + (traj.horizon - 2 * h) * u[1]
            exact = qb.speed_alpha(traj.state(t), traj.derivative(t), alpha)
            fd = finite_diff_speed(traj, t, h, alpha)
            tally.add(abs(fd - exact) / max(exact, 1e-300), s)
        out.append(tally.report())
    return out


# ---------------------------------------------------------------------------
# metric axioms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FuzzConfig:
    """Parameters of the metric-axiom fuzz suite."""

    dims: tuple = (2, 3, 4, 5, 6)
    samples: int = 1000
    seed: int = DEFAULT_SEED
    alphas: tuple = (0.6, 0.9, 1.0)
    tolerances: dict = field(
        default_factory=lambda: {
            "nonnegativity": 0.0,
            "symmetry": 1e-12,
            "identity": 1e-7,
            "indiscernibles": 0.0,
            "triangle": 1e-9,
            "unitary_invariance": 1e-10,
            "image_norm": 0.0,
        }
    )

    def __post_init__(self):
        if self.samples < 1:
            raise ValidationError("samples must be >= 1")
        for n in self.dims:
            if not (2 <= n <= MAX_DIM):
                raise ValidationError(f"dims must lie in 2..{MAX_DIM}, got {n}")
            for a in self.alphas:
                sg.check_alpha(a, n)


IDENTITY_THRESHOLD = 1e-7
NEAR_OFFSET = 1e-5
IMAGE_NORM_FLOOR = 1e-8


def _framed(rho, sigma, frames, alpha):
    return sg.framed_distance(rho, sigma, frames, alpha)


def axiom_suite(cfg: FuzzConfig | None = None, *, distance: Callable | None = None, framed: Callable | None = None) -> list[CheckReport]:
    """Metric axioms for ``distance_alpha`` and ``framed_distance``.

    For each dimension and sample a seeded triple ``(rho, sigma, chi)`` and
    a random unitary are drawn and tested at every alpha. ``distance`` and ``framed`` replace the
    functions under test (used to check that the suite catches faults).
    """
    cfg = cfg or FuzzConfig()
    dist = distance or sg.distance_alpha
    fdist = framed or _framed
    tol = cfg.tolerances
    t = {}
    for prefix in ("distance", "framed"):
        for key in ("nonnegativity", "symmetry", "identity", "indiscernibles", "triangle", "unitary_invariance"):
            t[prefix, key] = _Tally(f"{prefix}_{key}", tol[key])
    image = _Tally("image_norm", tol["image_norm"])
    for n in cfg.dims:
        for k in range(cfg.samples):
            # one triple per (dimension, sample), reused for every alpha
            s = case_seed(cfg.seed, n, k)
            rho = _random_state(n, case_seed(s, 1))
            sigma = _random_state(n, case_seed(s, 2))
            chi = _random_state(n, case_seed(s, 3))
            u = random_unitary(n, case_seed(s, 4)).data
            eps = NEAR_OFFSET / max(float(np.max(np.abs(sigma.data - rho.data))), 1e-300)
            # validate derived matrices once rather than inside every call
            near = DensityMatrix((1.0 - eps) * rho.data + eps * sigma.data)
            ur = DensityMatrix(u @ rho.data @ u.conj().T)
            us = DensityMatrix(u @ sigma.data @ u.conj().T)
            fr, fs, fc, fn = (sg.eigenframe(x) for x in (rho, sigma, chi, near))
            ufr, ufs = UnitaryMatrix(u @ fr.data), UnitaryMatrix(u @ fs.data)
            for alpha in cfg.alphas:
                d_rs = dist(rho, sigma, alpha)
                d_sr = dist(sigma, rho, alpha)
                d_rc = dist(rho, chi, alpha)
                d_cs = dist(chi, sigma, alpha)
                t["distance", "nonnegativity"].add(-min(d_rs, d_sr, d_rc, d_cs), s)
                t["distance", "symmetry"].add(abs(d_rs - d_sr), s)
                t["distance", "identity"].add(dist(rho, rho, alpha) - IDENTITY_THRESHOLD, s)
                t["distance", "indiscernibles"].add(IDENTITY_THRESHOLD - dist(rho, near, alpha), s)
                t["distance", "triangle"].add(d_rs - d_rc - d_cs, s)
                t["distance", "unitary_invariance"].add(abs(dist(ur, us, alpha) - d_rs), s)
                norm = math.sqrt(sg.f_norm_squared(rho.purity, alpha, n))
                image.add(IMAGE_NORM_FLOOR - norm, s)

                f_rs = fdist(rho, sigma, (fr, fs), alpha)
                f_sr = fdist(sigma, rho, (fs, fr), alpha)
                f_rc = fdist(rho, chi, (fr, fc), alpha)
                f_cs = fdist(chi, sigma, (fc, fs), alpha)
                t["framed", "nonnegativity"].add(-min(f_rs, f_sr, f_rc, f_cs), s)
                t["framed", "symmetry"].add(abs(f_rs - f_sr), s)
                t["framed", "identity"].add(fdist(rho, rho, (fr, fr), alpha) - IDENTITY_THRESHOLD, s)
                # a nearby state with a nearby frame stays distinguishable
                t["framed", "indiscernibles"].add(IDENTITY_THRESHOLD - fdist(rho, near, (fr, fn), alpha), s)
                t["framed", "triangle"].add(f_rs - f_rc - f_cs, s)
                t["framed", "unitary_invariance"].add(abs(fdist(ur, us, (ufr, ufs), alpha) - f_rs), s)
    reports = [tally.report() for tally in t.values()]
    reports.append(image.report())
    return reports


# ---------------------------------------------------------------------------
# structural identities of projective matrices
# ---------------------------------------------------------------------------


def structural_suite(seed: int = DEFAULT_SEED, cases: int = 500, dims: Sequence[int] = (2, 3, 4, 5, 6)) -> list[CheckReport]:
    """Sum identity, pair purity, covariance and DFT flattening."""
    sum_id = _Tally("pair_sum_identity", 1e-10)
    purity = _Tally("pair_purity_identity", 1e-10)
    cov = _Tally("projective_covariance", 1e-10)
    flat = _Tally("dft_flattening", 1e-12)
    for k in range(cases):
        s = case_seed(seed, 53, k)
        n = dims[k % len(dims)]
        rho = _random_state(n, s)
        fam = sg.projective_family(rho)
        eye = np.eye(n)
        sum_id.add(float(np.max(np.abs(fam.total() - (2 * rho.data + (n - 1 - 2.0 / n) * eye)))), s)
        purity.add(max(abs(fam.purity(i, j) - (1.0 / n + 2 * abs(fam.offdiag[i, j]) ** 2)) for i, j in fam.pairs), s)
        u = random_unitary(n, case_seed(s, 9)).data
        moved = sg.projective_family(u @ rho.data @ u.conj().T, u @ fam.frame.data)
        cov.add(max(float(np.max(np.abs(moved.pairs[p].data - u @ fam.pairs[p].data @ u.conj().T))) for p in fam.pairs), s)
        lam = uniforms(case_seed(s, 11), n)
        lam = lam / lam.sum()
        f = fourier_matrix(n)
        d = np.real(np.diag(f @ np.diag(lam) @ f.conj().T))
        flat.add(float(np.max(np.abs(d - 1.0 / n))), s)
    return [sum_id.report(), purity.report(), cov.report(), flat.report()]


# ---------------------------------------------------------------------------
# orthogonal pure states
# ---------------------------------------------------------------------------


def _pair_angle_reference(r, s, proj, n):
    """Principal-branch angle between projected states, from scratch."""
    eye = np.eye(n)
    a = proj @ r @ proj + (eye - proj) / n
    b = proj @ s @ proj + (eye - proj) / n
    pa = float(np.real(np.trace(a @ a)))
    pb = float(np.real(np.trace(b @ b)))
    alpha = max(pa, pb)
    if alpha <= 1.0 / n + 1e-12:
        alpha = 1.0
    fa = a - (1 + alpha - pa) / n * eye
    fb = b - (1 + alpha - pb) / n * eye
    c = float(np.real(np.trace(fa @ fb))) / math.sqrt(float(np.real(np.trace(fa @ fa))) * float(np.real(np.trace(fb @ fb))))
    return math.acos(min(1.0, max(-1.0, c)))


def orthogonal_brute_force(n: int) -> float:
    """Largest framed distance between orthogonal basis states, by enumeration.

    Both states share the identity frame. All permutations of the DFT
    columns and all ordered pairs ``m != k`` of basis states are tried; each
    projective matrix and angle is formed directly with ``arccos``.
    """
    n = int(n)
    if not (2 <= n <= 5):
        raise ValidationError("orthogonal_brute_force supports 2 <= n <= 5")
    f = fourier_matrix(n)
    basis_states = [np.diag(np.eye(n)[m]).astype(complex) for m in range(n)]
    best = 0.0
    for perm in itertools.permutations(range(n)):
        b = permutation_unitary(perm).data @ f
        projs = {}
        for i in range(n):
            for j in range(n):
                if i != j:
                    g = b[:, [i, j]]
                    projs[i, j] = g @ g.conj().T
        for m in range(n):
            for k in range(n):
                if m == k:
                    continue
                total = sum(_pair_angle_reference(basis_states[m], basis_states[k], p, n) for p in projs.values())
                best = max(best, total)
    return best


def orthogonal_suite(dims: Sequence[int] = (2, 3, 4)) -> list[CheckReport]:
    """Permutation search vs brute force, and the closed form as information."""
    out = []
    for n in dims:
        a = np.zeros((n, n))
        a[0, 0] = 1
        b = np.zeros((n, n))
        b[1, 1] = 1
        eye = np.eye(n)
        searched, _ = sg.permuted_distance(a, b, frames=(eye, eye))
        brute = orthogonal_brute_force(n)
        out.append(CheckReport(f"orthogonal_search_vs_enumeration_n{n}", 1, abs(searched - brute), 1e-9, abs(searched - brute) <= 1e-9))
        ref = qb.orthogonal_reference_distance(n)
        gap = abs(brute - ref)
        out.append(
            CheckReport(
                f"orthogonal_closed_form_n{n}",
                1,
                gap,
                1e-9,
                gap <= 1e-9,
                blocking=False,
                note=f"enumerated={brute / math.pi:.12g}pi closed_form={ref / math.pi:.12g}pi",
            )
        )
    return out


# ---------------------------------------------------------------------------
# closed-form cross-checks
# ---------------------------------------------------------------------------


def shifted_pair_formula(lambdas: Sequence[float], pair: tuple) -> np.ndarray:
    """Hand-derived projective matrices of ``diag(lambdas)`` for N = 3.

    These use the DFT with index shift ``(m+1)(n+1)`` and identity frame.
    """
    l0, l1, l2 = (x - 1.0 / 3.0 for x in lambdas)
    w = np.exp(2j * np.pi / 3)
    v = np.exp(1j * np.pi / 3)
    if pair == (0, 1):
        m = np.array([[l0, l2, l1], [l2, l1, l0], [l1, l0, l2]], dtype=complex)
    elif pair == (0, 2):
        m = np.array(
            [[l0, w * l2, -v * l1], [np.conj(w) * l2, l1, -np.conj(v) * l0], [-np.conj(v) * l1, -v * l0, l2]]
        )
    elif pair == (1, 2):
        m = np.array(
            [[l0, np.conj(w) * l2, -np.conj(v) * l1], [w * l2, l1, -v * l0], [-v * l1, -np.conj(v) * l0, l2]]
        )
    else:
        raise ValidationError(f"no closed form for pair {pair}")
    return np.eye(3) / 3 + m / 3


def damping_traces(l1: float, l2: float, p: float, pdot: float):
    """Closed forms for a pair of the damped 3-level state.

    Returns ``(Tr X^2, Tr Xdot^2, Tr X Xdot)`` for ``X = [rho_t]_ij``.
    """
    q = l1 * l1 + l2 * l2 + l1 * l2
    return (
        5.0 / 9.0 + 2.0 / 3.0 * (p * p * q - p * (l1 + l2)),
        2.0 / 3.0 * pdot * pdot * q,
        pdot / 3.0 * (2 * p * q - (l1 + l2)),
    )


def unitary_spread_formula(lambdas, e_m=1.0, omega=1.0, mu=0.5):
    """Hand-derived energy-spread expressions for the driven 3-level system."""
    l0, l1, l2 = (x - 1.0 / 3.0 for x in lambdas)
    a = ((mu - 1) ** 2 * e_m**2 + 2 * omega**2) * l0**2
    c = (mu**2 * e_m**2 + 2 * omega**2) * l2**2
    mix = 2 * omega**2 + e_m * omega - 2 * mu * e_m * omega
    d01 = (a + e_m**2 * l1**2 + c + 2 * e_m * omega * l0 * l1 + mix * l0 * l2 - 2 * e_m * omega * l1 * l2) / 3
    d02 = (a + (e_m**2 + 3 * omega**2) * l1**2 + c - e_m * omega * l0 * l1 - mix * l0 * l2 + e_m * omega * l1 * l2) / 3
    return {(0, 1): d01, (0, 2): d02, (1, 2): d02}


CLOSED_FORM_LAMBDAS = ((1.0, 0.0, 0.0), (0.5, 0.3, 0.2), (0.0, 0.5, 0.5), (0.2, 0.1, 0.7))


def closed_form_crosscheck() -> list[CheckReport]:
    """Closed-form projective matrices, damping traces and energy spreads.

    The energy-spread comparison is informational (non-blocking); the
    direct trace definition is authoritative.
    """
    shifted = fourier_matrix(3, shift=1)
    eye = np.eye(3)
    pm = _Tally("shifted_dft_projective_matrices", 1e-12)
    for k, lam in enumerate(CLOSED_FORM_LAMBDAS):
        fam = sg.projective_family(np.diag(lam), eye, basis=shifted)
        for pair in ((0, 1), (0, 2), (1, 2)):
            pm.add(float(np.max(np.abs(fam.pairs[pair].data - shifted_pair_formula(lam, pair)))), k)

    traces = _Tally("damping_pair_traces", 1e-10)
    b = fourier_matrix(3)
    for k, (l1, l2) in enumerate(((0.5, 0.5), (0.3, 0.2), (0.7, 0.3), (0.1, 0.4))):
        traj = dyn.amplitude_damping_trajectory((1 - l1 - l2, l1, l2), dyn.ConstantDecay(1.0), 2.0)
        for t in (0.0, 0.5, 1.0, 1.7):
            p = math.exp(-t)
            x = traj.states([t])
            xd = traj.derivatives([t])
            frame = np.eye(3, dtype=complex)[None]
            pairs = dyn_pairs(x, frame, b)
            dpairs = dyn_pairs(xd, frame, b, shift_identity=False)
            expect = damping_traces(l1, l2, p, -p)
            for i, j in ((0, 1), (0, 2), (1, 2)):
                xm, dm = pairs[i, j], dpairs[i, j]
                got = (
                    float(np.real(np.trace(xm @ xm))),
                    float(np.real(np.trace(dm @ dm))),
                    float(np.real(np.trace(xm @ dm))),
                )
                traces.add(max(abs(g - e) for g, e in zip(got, expect)), k)

    spread_as_value = _Tally("driven_spread_closed_form", 1e-10, blocking=False)
    spread_as_square = _Tally("driven_spread_closed_form_squared", 1e-10, blocking=False)
    h = dyn.driven_hamiltonian()
    for k, lam in enumerate(CLOSED_FORM_LAMBDAS):
        fam = sg.projective_family(np.diag(lam), eye, basis=shifted)
        formula = unitary_spread_formula(lam)
        for pair, val in formula.items():
            direct = qb.energy_variance(h, fam.pairs[pair])
            spread_as_value.add(abs(direct - val), k)
            spread_as_square.add(abs(direct**2 - val), k)
    return [
        pm.report(),
        traces.report(),
        spread_as_value.report(note="erratum-candidate"),
        spread_as_square.report(note="erratum-candidate"),
    ]


def dyn_pairs(stack, frames, basis, shift_identity=True):
    """Projective blocks ``P X P (+ (I - P)/N)`` of the first matrix in ``stack``.

    With ``shift_identity=False`` the identity padding is omitted, which
    gives the projected time derivative.
    """
    n = stack.shape[-1]
    g_all = frames[0] @ basis
    out = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                g = g_all[:, [i, j]]
                proj = g @ g.conj().T
                m = proj @ stack[0] @ proj
                if shift_identity:
                    m = m + (np.eye(n) - proj) / n
                out[i, j] = m
    return out


# ---------------------------------------------------------------------------
# bound validity
# ---------------------------------------------------------------------------


def bound_validity_suite(seed: int = DEFAULT_SEED, cases: int = 100, margin: float = 2e-3) -> list[CheckReport]:
    """Both bounds stay below the elapsed time on random trajectories."""
    out = []
    for fam_idx, kind in enumerate(FAMILIES):
        ta = _Tally(f"tau_alpha_validity_{kind}", margin)
        tq = _Tally(f"tau_qsl_validity_{kind}", margin)
        for k in range(cases):
            s = case_seed(seed, 71, fam_idx, k)
            traj = random_trajectory(kind, s)
            n = traj.dim
            u = uniforms(case_seed(s, 13), 1)[0]
            alpha = 1.0 / n + 0.02 + (1.0 - 1.0 / n - 0.02) * u
            ta.add(qb.tau_alpha(traj, alpha).ratio - 1.0, s)
            tq.add(qb.tau_qsl(traj).ratio - 1.0, s)
        out += [ta.report(), tq.report()]
    return out


def closed_consistency_suite(seed: int = DEFAULT_SEED, cases: int = 50, tol: float = 1e-4) -> list[CheckReport]:
    """Energy-spread fast path against the generic framed bound."""
    tally = _Tally("closed_vs_generic", tol)
    for k in range(cases):
        s = case_seed(seed, 89, k)
        u = uniforms(case_seed(s, 1), 2)
        n = 2 + int(u[0] * 3)
        tau = 0.05 + 0.95 * u[1]
        h = random_hermitian(n, case_seed(s, 2))
        rho0 = _random_state(n, s)
        fast = qb.tau_qsl_closed(h, rho0, tau)
        generic = qb.tau_qsl(dyn.unitary_trajectory(h, rho0, tau))
        tally.add(abs(fast.bound - generic.bound) / max(abs(generic.bound), 1e-300), s)
    return [tally.report()]


def run_all(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckReport]:
    """Everything ``qslkit verify`` runs; ``quick`` cuts samples tenfold."""
    scale = 10 if quick else 1
    reports = []
    reports += axiom_suite(FuzzConfig(samples=max(1, 1000 // scale), seed=seed))
    reports += structural_suite(seed, max(1, 500 // scale))
    reports += speed_oracle_suite(seed, max(1, 100 // scale))
    reports += closed_form_crosscheck()
    reports += orthogonal_suite()
    reports += bound_validity_suite(seed, max(1, 100 // scale))
    reports += closed_consistency_suite(seed, max(1, 50 // scale))
    return reports


__all__ = [
    "CheckReport",
    "FuzzConfig",
    "axiom_suite",
    "bound_validity_suite",
    "case_seed",
    "closed_consistency_suite",
    "finite_diff_speed",
    "orthogonal_brute_force",
    "orthogonal_suite",
    "random_trajectory",
    "run_all",
    "speed_oracle_suite",
    "structural_suite",
    "closed_form_crosscheck",
]
