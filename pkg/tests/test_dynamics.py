import math

import numpy as np
import pytest
import scipy.integrate
import scipy.linalg
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from qslkit import dynamics as dyn
from qslkit.errors import FrameTrackingError, ValidationError
from qslkit.matrixcore import fourier_matrix, random_density, random_hermitian
from qslkit.stategeom import projective_family
from qslkit.verify import FAMILIES, random_trajectory

from .conftest import dm, seeds, states

OHMIC4 = dyn.OhmicDecay(1.0, 4.0)


def column_overlaps(a, b):
    return np.abs(np.einsum("ij,ij->j", a.conj(), b))


class TestTrajectoryInvariants:
    @pytest.mark.parametrize("kind", FAMILIES)
    @pytest.mark.parametrize("seed", range(12))
    def test_derivative_matches_central_difference(self, kind, seed):
        traj = random_trajectory(kind, seed)
        h = 1e-6
        for t in np.linspace(0.1, 0.9, 5) * traj.horizon:
            fd = (traj.states(t + h)[0] - traj.states(t - h)[0]) / (2 * h)
            d = traj.derivatives(t)[0]
            assert np.max(np.abs(fd - d)) <= 1e-5
            assert abs(np.trace(d)) <= 1e-10

    @pytest.mark.parametrize("kind", FAMILIES)
    @pytest.mark.parametrize("seed", range(6))
    def test_states_are_valid(self, kind, seed):
        traj = random_trajectory(kind, seed)
        for r in traj.states(traj.grid(64)):
            assert abs(np.trace(r) - 1) <= 1e-12
            assert np.max(np.abs(r - r.conj().T)) <= 1e-12
            assert np.linalg.eigvalsh(r).min() >= -1e-12

    @pytest.mark.parametrize("kind", FAMILIES)
    @pytest.mark.parametrize("seed", range(6))
    def test_declared_frames_diagonalize(self, kind, seed):
        traj = random_trajectory(kind, seed)
        ts = traj.grid(33)
        frames = traj.frames(ts)
        if frames is None:
            return
        for r, f in zip(traj.states(ts), frames):
            lam = f.conj().T @ r @ f
            assert np.max(np.abs(lam - np.diag(np.diag(lam)))) <= 1e-8
        t = 0.5 * traj.horizon
        assert np.max(np.abs(traj.frames(t + 1e-7)[0] - traj.frames(t)[0])) <= 1e-5

    def test_times_outside_horizon(self):
        traj = dyn.depolarizing_trajectory(np.eye(2) / 2, tau=1.0)
        with pytest.raises(ValidationError):
            traj.states(1.5)
        with pytest.raises(ValidationError):
            traj.states(-0.1)


class TestUnitary:
    def test_commuting_hamiltonian_is_static(self):
        rho = np.diag([0.5, 0.3, 0.2])
        traj = dyn.unitary_trajectory(np.diag([1.0, -2.0, 0.5]), rho, 3.0)
        for r in traj.states(traj.grid(20)):
            assert np.allclose(r, rho, atol=1e-14)

    def test_driven_ground_state(self):
        traj = dyn.unitary_trajectory(dyn.driven_hamiltonian(), dm([1, 0, 0]), 5.0)
        rs = traj.states(traj.grid(101))
        pops = np.real(np.einsum("tii->ti", rs))
        assert pops[:, 0].min() < 0.5 and pops[:, 2].max() > 0.5
        purity = np.real(np.einsum("tij,tji->t", rs, rs))
        assert np.max(np.abs(purity - 1)) <= 1e-12

    @given(seeds)
    def test_spectrum_is_constant(self, seed):
        rho = random_density(4, 4, seed)
        traj = dyn.unitary_trajectory(random_hermitian(4, seed + 1), rho, 2.0)
        ref = np.linalg.eigvalsh(rho.data)
        for r in traj.states(traj.grid(9)):
            assert np.max(np.abs(np.linalg.eigvalsh(r) - ref)) <= 1e-10

    def test_schedule_is_ordered_product(self):
        h1, h2 = random_hermitian(3, 1).data, random_hermitian(3, 2).data
        rho = random_density(3, 3, 3).data
        traj = dyn.unitary_trajectory([(h1, 0.4), (h2, 1.0)], rho, 1.0)
        u = scipy.linalg.expm(-1j * h2 * 0.3) @ scipy.linalg.expm(-1j * h1 * 0.4)
        assert np.allclose(traj.states(0.7)[0], u @ rho @ u.conj().T, atol=1e-12)

    def test_validation(self):
        rho = np.eye(2) / 2
        with pytest.raises(ValidationError):
            dyn.unitary_trajectory([], rho, 1.0)
        with pytest.raises(ValidationError):
            dyn.unitary_trajectory(np.eye(2), rho, 0.0)
        with pytest.raises(ValidationError):
            dyn.unitary_trajectory([(np.eye(2), 0.5)], rho, 1.0)
        with pytest.raises(ValidationError):
            dyn.unitary_trajectory(np.eye(3), rho, 1.0)


class TestDepolarizing:
    def test_constant_schedule(self):
        rho = random_density(3, 3, 4)
        traj = dyn.depolarizing_trajectory(rho, (lambda t: 1.0, lambda t: 0.0), 2.0)
        assert np.allclose(traj.states(traj.grid(5)), rho.data, atol=1e-15)

    def test_pair_identity(self):
        rho = random_density(4, 4, 5)
        traj = dyn.depolarizing_trajectory(rho, dyn.ExponentialSchedule(0.7), 2.0)
        fam0 = projective_family(rho)
        for t in (0.3, 1.1, 2.0):
            p = math.exp(-0.7 * t)
            fam = projective_family(traj.states(t)[0], traj.frames(t)[0])
            for key, mat in fam.pairs.items():
                expected = p * fam0.pairs[key].data + (1 - p) * np.eye(4) / 4
                assert np.max(np.abs(mat.data - expected)) <= 1e-10

    @given(states())
    def test_purity(self, rho):
        traj = dyn.depolarizing_trajectory(rho, tau=1.0)
        r = traj.states(1.0)[0]
        n = rho.dim
        assert abs(np.trace(r @ r).real - (1 / n + math.exp(-2) * (rho.purity - 1 / n))) <= 1e-12

    def test_rejects_bad_schedules(self):
        rho = np.eye(2) / 2
        with pytest.raises(ValidationError):
            dyn.depolarizing_trajectory(rho, (lambda t: math.cos(3 * t), lambda t: -3 * math.sin(3 * t)), 2.0)
        with pytest.raises(ValidationError):
            dyn.depolarizing_trajectory(rho, (lambda t: 0.9, lambda t: 0.0), 1.0)
        with pytest.raises(ValidationError):
            dyn.depolarizing_trajectory(rho, (lambda t: 1 - t, lambda t: -1.0), 1.5)


class TestDecay:
    def test_at_zero(self):
        assert dyn.decay_rate(OHMIC4, 0.0) == 0.0
        assert dyn.decay_rate(dyn.ConstantDecay(0.3), 0.0) == 0.3

    @given(st.floats(0, 20), st.floats(0.1, 5))
    def test_ohmic_k1(self, t, wc):
        got = dyn.decay_rate(dyn.OhmicDecay(wc, 1.0), t)
        assert abs(got - wc**2 * t / (1 + wc**2 * t**2)) <= 1e-12

    def test_k4_crossing(self):
        assert abs(dyn.decay_rate(OHMIC4, 1.0)) <= 1e-15
        assert dyn.decay_rate(OHMIC4, 0.99) > 0
        assert np.all(dyn.decay_rate(OHMIC4, np.linspace(1.01, 3, 50)) < 0)

    def test_large_ohmicity(self):
        t, k = 0.3, 30.0
        ref = (1 + t * t) ** (-k / 2) * scipy.special.gamma(k) * math.sin(k * math.atan(t))
        assert abs(dyn.decay_rate(dyn.OhmicDecay(1.0, k), t) / ref - 1) <= 1e-12

    def test_validation(self):
        with pytest.raises(ValidationError):
            dyn.ConstantDecay(0.0)
        with pytest.raises(ValidationError):
            dyn.OhmicDecay(1.0, -1.0)
        with pytest.raises(ValidationError):
            dyn.decay_rate(OHMIC4, -0.1)

    def test_constant_integral(self):
        assert dyn.gamma_integral(dyn.ConstantDecay(1.0), 2.0) == 2.0

    @pytest.mark.parametrize("t", [0.2, 1.0, 2.5, 7.0])
    @pytest.mark.parametrize("k", [0.5, 1.0, 4.0])
    def test_ohmic_integral_matches_quad(self, t, k):
        model = dyn.OhmicDecay(1.3, k)
        ref, _ = scipy.integrate.quad(lambda x: dyn.decay_rate(model, x), 0, t, epsabs=1e-13, epsrel=1e-13, limit=200)
        assert abs(dyn.gamma_integral(model, t) - ref) <= 1e-10

    def test_k1_closed_form(self):
        ts = np.linspace(0, 5, 11)
        assert np.allclose(dyn.gamma_integral(dyn.OhmicDecay(1.0, 1.0), ts), 0.5 * np.log1p(ts**2), atol=1e-10)

    def test_array_matches_scalars(self):
        ts = np.array([2.0, 0.5, 1.0, 0.5])
        arr = dyn.gamma_integral(OHMIC4, ts)
        assert np.allclose(arr, [dyn.gamma_integral(OHMIC4, t) for t in ts], atol=1e-12)

    def test_k4_backflow(self):
        ts = np.linspace(0, 1, 41)
        g = dyn.gamma_integral(OHMIC4, ts)
        assert np.all(np.diff(g) > 0)
        later = dyn.gamma_integral(OHMIC4, np.linspace(1, 3, 21))
        assert np.all(np.diff(later) < 0)


class TestAmplitudeDamping:
    def test_ground_state_is_static(self):
        traj = dyn.amplitude_damping_trajectory([1, 0, 0], OHMIC4, 2.0)
        assert np.allclose(traj.states(traj.grid(9)), np.diag([1, 0, 0]), atol=1e-15)

    @pytest.mark.parametrize("l1,l2", [(0.5, 0.5), (0.3, 0.2), (0.1, 0.6)])
    def test_pair_purity_formula(self, l1, l2):
        traj = dyn.amplitude_damping_trajectory([1 - l1 - l2, l1, l2], dyn.ConstantDecay(1.0), 2.0)
        for t in (0.0, 0.4, 1.0, 2.0):
            p = math.exp(-t)
            fam = projective_family(traj.states(t)[0], np.eye(3))
            want = 5 / 9 + 2 / 3 * (p * p * (l1 * l1 + l2 * l2 + l1 * l2) - p * (l1 + l2))
            for key in fam.pairs:
                assert abs(fam.purity(*key) - want) <= 1e-12

    def test_equal_excited_populations_scale_pairs(self):
        traj = dyn.amplitude_damping_trajectory([0.2, 0.4, 0.4], dyn.ConstantDecay(1.0), 2.0)
        fam0 = projective_family(traj.states(0.0)[0], np.eye(3))
        for t in (0.5, 1.5):
            fam = projective_family(traj.states(t)[0], np.eye(3))
            for key, mat in fam.pairs.items():
                base = fam0.pairs[key].data - np.eye(3) / 3
                shifted = mat.data - np.eye(3) / 3
                c = np.vdot(base, shifted).real / np.vdot(base, base).real
                assert np.max(np.abs(shifted - c * base)) <= 1e-12

    def test_populations_sum_and_diagonal(self):
        traj = dyn.amplitude_damping_trajectory([0.1, 0.5, 0.4], OHMIC4, 3.0)
        for r in traj.states(traj.grid(30)):
            assert abs(np.trace(r).real - 1) <= 1e-14
            assert np.all(r[~np.eye(3, dtype=bool)] == 0)

    def test_rejects_non_probability(self):
        with pytest.raises(ValidationError):
            dyn.amplitude_damping_trajectory([0.5, 0.6], OHMIC4, 1.0)
        with pytest.raises(ValidationError):
            dyn.amplitude_damping_trajectory([1.2, -0.2], OHMIC4, 1.0)


class TestDephasing:
    def test_no_coherence_is_static(self):
        traj = dyn.dephasing_trajectory([0.5, 0.5], {}, 1.0, 2.0)
        assert traj.declares_frame
        assert np.allclose(traj.states(traj.grid(5)), np.eye(2) / 2)

    @given(states(), st.floats(0.1, 3))
    def test_purity(self, rho, gamma):
        r = rho.data
        n = rho.dim
        coh = {(i, j): r[i, j] for i in range(n) for j in range(i + 1, n)}
        traj = dyn.dephasing_trajectory(np.real(np.diag(r)), coh, gamma, 2.0)
        lam = np.real(np.diag(r))
        c2 = sum(abs(c) ** 2 for c in coh.values())
        for t in (0.0, 0.7, 2.0):
            s = traj.states(t)[0]
            want = float(np.sum(lam**2)) + 2 * math.exp(-2 * gamma * t) * c2
            assert abs(np.trace(s @ s).real - want) <= 1e-12

    def test_long_time_limit(self):
        traj = dyn.dephasing_trajectory([0.5, 0.5], {(0, 1): 0.5}, 5.0, 10.0)
        assert np.allclose(traj.states(10.0)[0], np.eye(2) / 2, atol=1e-20)

    def test_rejects_invalid_matrix(self):
        with pytest.raises(ValidationError):
            dyn.dephasing_trajectory([0.5, 0.5], {(0, 1): 0.9}, 1.0, 1.0)
        with pytest.raises(ValidationError):
            dyn.dephasing_trajectory([0.5, 0.5], {(1, 0): 0.1}, 1.0, 1.0)


def _undeclared(traj):
    return dyn.custom_trajectory(lambda t: traj.states(t)[0], lambda t: traj.derivatives(t)[0], traj.horizon)


class TestTracking:
    def test_constant_trajectory(self):
        rho = random_density(3, 3, 1).data
        traj = dyn.custom_trajectory(lambda t: rho, lambda t: np.zeros((3, 3)), 1.0)
        frames = dyn.track_frame(traj, traj.grid(10))
        assert np.allclose(frames, frames[0], atol=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_unitary_matches_declared(self, seed):
        declared = dyn.unitary_trajectory(random_hermitian(4, seed), random_density(4, 4, seed + 50), 1.5)
        ts = declared.grid(257)
        tracked = dyn.track_frame(_undeclared(declared), ts)
        ref = declared.frames(ts)
        for a, b in zip(tracked, ref):
            assert column_overlaps(a, b).min() >= 1 - 1e-8

    def test_degenerate_amplitude_damping(self):
        declared = dyn.amplitude_damping_trajectory([0.6, 0.2, 0.2], OHMIC4, 3.0)
        ts = declared.grid(129)
        tracked = dyn.track_frame(_undeclared(declared), ts)
        for f, r in zip(tracked, declared.states(ts)):
            assert abs(abs(f[0, 0]) - 1) <= 1e-12
            assert np.max(np.abs(f[1:, 0])) <= 1e-12 and np.max(np.abs(f[0, 1:])) <= 1e-12
            lam = f.conj().T @ r @ f
            assert np.max(np.abs(lam - np.diag(np.diag(lam)))) <= 1e-12

    def test_degenerate_start_follows_derivative(self):
        traj = dyn.dephasing_trajectory([0.5, 0.3, 0.2], {(0, 1): math.sqrt(0.15), (0, 2): math.sqrt(0.1), (1, 2): math.sqrt(0.06)}, 1.0, 1.0)
        assert abs(traj.state(0.0).purity - 1) <= 1e-12
        ts = np.array([0.0, 1e-5])
        frames = dyn.track_frame(traj, ts)
        assert column_overlaps(frames[0], frames[1]).min() >= 1 - 1e-6

    def test_coarse_grid_raises(self):
        rho = np.diag([0.4, 0.25, 0.15, 0.12, 0.08]).astype(complex)
        f = fourier_matrix(5)
        with pytest.raises(FrameTrackingError, match="refine the grid"):
            dyn.track_states(np.stack([rho, f @ rho @ f.conj().T]))

    def test_needs_two_points(self):
        traj = dyn.depolarizing_trajectory(np.eye(2) / 2)
        with pytest.raises(ValidationError):
            dyn.track_frame(traj, [0.0])
