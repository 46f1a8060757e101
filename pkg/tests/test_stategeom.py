import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qslkit.errors import ValidationError
from qslkit.matrixcore import fourier_matrix, random_density, random_unitary
from qslkit.qslbounds import EnergySpec, saturating_hamiltonian
from qslkit.dynamics import unitary_trajectory
from qslkit.stategeom import (
    alpha_assignment,
    check_alpha,
    default_alphas,
    distance_alpha,
    eigenframe,
    f_map,
    f_norm_squared,
    framed_distance,
    pair_distances,
    permuted_distance,
    projective_family,
)

from .conftest import alphas_unit, dm, seeds, state_pairs, states, unitaries


def reference_distance(rho, sigma, alpha):
    """Plain arccos of the normalized HS inner product."""
    n = rho.shape[0]

    def image(r):
        pur = np.trace(r @ r).real
        return r - (1 + alpha - pur) / n * np.eye(n)

    a, b = image(rho), image(sigma)
    c = np.vdot(a, b).real / (np.linalg.norm(a) * np.linalg.norm(b))
    return math.acos(max(-1.0, min(1.0, c)))


class TestAlpha:
    def test_bounds(self):
        assert check_alpha(1.0, 3) == 1.0
        for bad in (1 / 3, 0.2, 1.0001, float("nan")):
            with pytest.raises(ValidationError):
                check_alpha(bad, 3)

    def test_assignment_forms(self):
        a = alpha_assignment(0.8, 3)
        assert np.all(np.isnan(np.diag(a))) and np.all(a[~np.eye(3, dtype=bool)] == 0.8)
        m = alpha_assignment({(0, 1): 0.6, (0, 2): 0.7, (1, 2): 0.9}, 3)
        assert m[1, 0] == 0.6 and m[2, 1] == 0.9
        with pytest.raises(ValidationError):
            alpha_assignment({(0, 1): 0.6}, 3)
        with pytest.raises(ValidationError):
            alpha_assignment({(0, 1): 0.6, (1, 0): 0.7}, 2)
        asym = np.array([[0, 0.6, 0.7], [0.8, 0, 0.9], [0.7, 0.9, 0]])
        with pytest.raises(ValidationError):
            alpha_assignment(asym, 3)


class TestFMap:
    def test_maximally_mixed(self):
        out = f_map(np.eye(3) / 3, 1.0).data
        assert np.allclose(out, -2 / 9 * np.eye(3), atol=1e-15)
        assert abs(np.sum(np.abs(out) ** 2) - 4 / 27) < 1e-15

    def test_qubit_pure(self):
        out = f_map(np.diag([1.0, 0.0]), 1.0).data
        assert np.allclose(out, np.diag([0.5, -0.5]), atol=1e-15)
        assert abs(np.sum(np.abs(out) ** 2) - 0.5) < 1e-15

    @given(states(), alphas_unit)
    def test_norm_closed_form(self, rho, alpha):
        if alpha <= 1 / rho.dim + 1e-9:
            return
        img = f_map(rho, alpha).data
        direct = float(np.sum(np.abs(img) ** 2))
        assert abs(direct - f_norm_squared(rho.purity, alpha, rho.dim)) <= 1e-12
        assert direct > 1e-8

    def test_rejects_bad_alpha(self):
        with pytest.raises(ValidationError):
            f_map(np.eye(2) / 2, 0.5)


class TestDistance:
    def test_self_distance(self):
        rho = random_density(4, 4, 1)
        assert distance_alpha(rho, rho, 0.9) <= 1e-7

    def test_orthogonal_qubits(self):
        assert abs(distance_alpha(dm([1, 0]), dm([0, 1]), 1.0) - math.pi) < 1e-12

    @given(state_pairs(), alphas_unit)
    def test_matches_arccos_reference(self, pair, alpha):
        rho, sigma = pair
        if alpha <= 1 / rho.dim + 1e-9:
            return
        d = distance_alpha(rho, sigma, alpha)
        assert abs(d - reference_distance(rho.data, sigma.data, alpha)) <= 1e-7
        assert 0.0 <= d <= math.pi

    @given(state_pairs(), alphas_unit)
    def test_symmetric(self, pair, alpha):
        rho, sigma = pair
        if alpha <= 1 / rho.dim + 1e-9:
            return
        assert abs(distance_alpha(rho, sigma, alpha) - distance_alpha(sigma, rho, alpha)) <= 1e-12

    @given(st.integers(2, 5), seeds, alphas_unit)
    def test_triangle(self, n, seed, alpha):
        if alpha <= 1 / n + 1e-9:
            return
        a, b, c = (random_density(n, 1 + (seed + k) % n, seed + k) for k in range(3))
        lhs = distance_alpha(a, c, alpha)
        assert lhs <= distance_alpha(a, b, alpha) + distance_alpha(b, c, alpha) + 1e-9

    @given(state_pairs(), seeds)
    def test_unitary_invariance(self, pair, seed):
        rho, sigma = pair
        u = random_unitary(rho.dim, seed).data
        moved = [u @ x.data @ u.conj().T for x in (rho, sigma)]
        assert abs(distance_alpha(rho, sigma, 1.0) - distance_alpha(*moved, 1.0)) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            distance_alpha(np.eye(2) / 2, np.eye(3) / 3, 1.0)


class TestEigenframe:
    def test_pure_diagonal_gives_identity(self):
        assert np.array_equal(eigenframe(np.diag([1.0, 0, 0])).data, np.eye(3))

    def test_non_increasing(self):
        rho = random_density(5, 5, 4).data
        phi = eigenframe(rho).data
        lam = np.real(np.diag(phi.conj().T @ rho @ phi))
        assert np.all(np.diff(lam) <= 1e-14)


class TestProjective:
    def test_maximally_mixed(self):
        fam = projective_family(np.eye(4) / 4)
        for key, mat in fam.pairs.items():
            assert np.allclose(mat.data, np.eye(4) / 4, atol=1e-15)
            assert abs(fam.offdiag[key]) <= 1e-15

    def test_three_level_shifted_convention(self):
        lam = np.array([0.5, 0.3, 0.2])
        lt = lam - 1 / 3
        expected = np.eye(3) / 3 + np.array(
            [[lt[0], lt[2], lt[1]], [lt[2], lt[1], lt[0]], [lt[1], lt[0], lt[2]]]
        ) / 3
        fam = projective_family(np.diag(lam), np.eye(3), basis=fourier_matrix(3, shift=1))
        assert np.allclose(fam.pairs[(0, 1)].data, expected, atol=1e-12)

    @given(states())
    def test_pair_symmetry_and_purity(self, rho):
        fam = projective_family(rho)
        n = rho.dim
        for (i, j), mat in fam.pairs.items():
            assert np.max(np.abs(mat.data - fam.pairs[(j, i)].data)) <= 1e-12
            assert abs(fam.purity(i, j) - (1 / n + 2 * abs(fam.offdiag[(i, j)]) ** 2)) <= 1e-10
            assert abs(np.trace(mat.data) - 1) <= 1e-12

    @given(states())
    def test_sum_identity(self, rho):
        fam = projective_family(rho)
        n = rho.dim
        expected = 2 * rho.data + (n - 1 - 2 / n) * np.eye(n)
        assert np.max(np.abs(fam.total() - expected)) <= 1e-10

    @given(states(), seeds)
    def test_covariance(self, rho, seed):
        u = random_unitary(rho.dim, seed).data
        fam = projective_family(rho)
        moved = projective_family(u @ rho.data @ u.conj().T, u @ fam.frame.data)
        for key, mat in fam.pairs.items():
            assert np.max(np.abs(moved.pairs[key].data - u @ mat.data @ u.conj().T)) <= 1e-10

    def test_bad_frame_rejected(self):
        rho = np.diag([0.7, 0.2, 0.1])
        with pytest.raises(ValidationError):
            projective_family(rho, fourier_matrix(3))


class TestFramed:
    def test_zero_for_equal_states(self):
        rho = random_density(4, 4, 2)
        assert framed_distance(rho, rho) <= 1e-6

    @given(states(2), states(2), alphas_unit)
    def test_qubit_is_twice_the_distance(self, rho, sigma, alpha):
        d = framed_distance(rho, sigma, alphas=alpha)
        assert abs(d - 2 * distance_alpha(rho, sigma, alpha)) <= 1e-10

    def test_saturating_endpoints(self):
        rho0 = random_density(3, 3, 8)
        h = saturating_hamiltonian(rho0, EnergySpec((0.0, 0.5, 1.0)))
        traj = unitary_trajectory(h, rho0, 1.0)
        ends, frames = traj.states([0.0, 1.0]), traj.frames([0.0, 1.0])
        alphas = default_alphas(ends[0], ends[1], (frames[0], frames[1]))
        d = framed_distance(ends[0], ends[1], (frames[0], frames[1]), alphas)
        assert abs(d - 4.0) <= 1e-8

    def test_pair_distances_shape(self):
        d = pair_distances(random_density(3, 3, 1), random_density(3, 3, 2))
        assert d.shape == (3, 3) and np.all(np.diag(d) == 0) and np.allclose(d, d.T)


class TestDefaultAlphas:
    def test_maximally_mixed_falls_back(self):
        a = default_alphas(np.eye(3) / 3, np.eye(3) / 3)
        assert np.all(a[~np.eye(3, dtype=bool)] == 1.0)

    def test_pure_states(self):
        rho = dm([1, 0, 0])
        fam = projective_family(rho)
        a = default_alphas(rho, rho)
        for (i, j), lam in fam.offdiag.items():
            assert abs(a[i, j] - (1 / 3 + 2 * abs(lam) ** 2)) <= 1e-12

    def test_depolarizing_endpoint_keeps_initial_purity(self):
        rho = random_density(4, 4, 6)
        fam = projective_family(rho)
        later = 0.4 * rho.data + 0.6 * np.eye(4) / 4
        a = default_alphas(rho, later, (fam.frame, fam.frame))
        for i, j in itertools.permutations(range(4), 2):
            want = fam.purity(i, j)
            if want > 0.25 + 1e-12:
                assert abs(a[i, j] - want) <= 1e-12


class TestPermuted:
    def test_equal_states(self):
        rho = random_density(3, 3, 5)
        d, perm = permuted_distance(rho, rho)
        assert d <= 1e-6 and perm == (0, 1, 2)

    def test_orthogonal_qubits(self):
        d, _ = permuted_distance(dm([1, 0]), dm([0, 1]), (np.eye(2), np.eye(2)))
        assert abs(d - 2 * math.pi) <= 1e-9

    def test_orthogonal_qutrits(self):
        d, _ = permuted_distance(dm([1, 0, 0]), dm([0, 1, 0]), (np.eye(3), np.eye(3)))
        assert abs(d - 4 * math.pi) <= 1e-9
        assert abs(d - 32 * math.pi / 3) > 1.0

    def test_matches_explicit_search(self):
        from qslkit.matrixcore import permutation_unitary

        rho, sigma = random_density(3, 3, 11), random_density(3, 2, 12)
        frames = (eigenframe(rho), eigenframe(sigma))
        vals = []
        for perm in itertools.permutations(range(3)):
            b = permutation_unitary(perm).data @ fourier_matrix(3)
            vals.append(framed_distance(rho, sigma, frames, basis=b))
        d, _ = permuted_distance(rho, sigma, frames)
        assert abs(d - max(vals)) <= 1e-12

    def test_dimension_cap(self):
        rho = np.eye(9) / 9
        with pytest.raises(ValidationError):
            permuted_distance(rho, rho)
