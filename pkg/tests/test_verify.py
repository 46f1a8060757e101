import math

import numpy as np
import pytest

from qslkit import dynamics as dyn
from qslkit import stategeom as sg
from qslkit.errors import ValidationError
from qslkit.verify import (
    CheckReport,
    FuzzConfig,
    axiom_suite,
    bound_validity_suite,
    case_seed,
    closed_consistency_suite,
    damping_traces,
    finite_diff_speed,
    orthogonal_brute_force,
    orthogonal_suite,
    shifted_pair_formula,
    speed_oracle_suite,
    structural_suite,
    closed_form_crosscheck,
)

SMALL = FuzzConfig(dims=(2, 3, 4), samples=20)


def by_name(reports):
    return {r.name: r for r in reports}


class TestReports:
    def test_line_format(self):
        r = CheckReport("demo", 3, 1.5e-13, 1e-12, True)
        assert r.to_line() == "check=demo cases=3 worst=1.500000e-13 tol=1.0e-12 pass=true blocking=true seed=-"

    def test_line_with_seed_and_note(self):
        r = CheckReport("demo", 1, 2.0, 1.0, False, seed=42, blocking=False, note="x")
        assert r.to_line().endswith("pass=false blocking=false seed=42 note=x")

    def test_case_seed(self):
        assert case_seed(1, 2, 3) == case_seed(1, 2, 3)
        assert case_seed(1, 2, 3) != case_seed(1, 3, 2)


class TestFuzzConfig:
    def test_rejects_alpha_at_one_over_n(self):
        with pytest.raises(ValidationError):
            FuzzConfig(dims=(2,), alphas=(0.5,))
        with pytest.raises(ValidationError):
            FuzzConfig(dims=(3,), alphas=(1 / 3,))

    def test_rejects_bad_dims_and_samples(self):
        with pytest.raises(ValidationError):
            FuzzConfig(dims=(9,))
        with pytest.raises(ValidationError):
            FuzzConfig(samples=0)


class TestAxioms:
    def test_small_run_passes(self):
        reports = axiom_suite(SMALL)
        assert all(r.passed for r in reports), [r.to_line() for r in reports if not r.passed]
        assert all(r.cases > 0 for r in reports)

    def test_deterministic(self):
        a = [r.to_line() for r in axiom_suite(SMALL)]
        b = [r.to_line() for r in axiom_suite(SMALL)]
        assert a == b

    def test_asymmetric_distance_is_caught(self):
        def skewed(rho, sigma, alpha):
            d = sg.distance_alpha(rho, sigma, alpha)
            return d + 1e-6 * float(np.real(rho.data[0, 0]))

        reports = by_name(axiom_suite(SMALL, distance=skewed))
        assert not reports["distance_symmetry"].passed
        assert reports["distance_symmetry"].seed is not None
        assert reports["framed_symmetry"].passed

    def test_broken_framed_distance_is_caught(self):
        def shrunk(rho, sigma, frames, alpha):
            return 0.0

        reports = by_name(axiom_suite(SMALL, framed=shrunk))
        assert not reports["framed_indiscernibles"].passed


class TestOracles:
    def test_constant_trajectory_speed(self):
        traj = dyn.depolarizing_trajectory(np.eye(3) / 3)
        assert finite_diff_speed(traj, 0.5, 1e-6, 1.0) == 0.0

    def test_out_of_range(self):
        traj = dyn.depolarizing_trajectory(np.eye(3) / 3)
        with pytest.raises(ValidationError):
            finite_diff_speed(traj, 0.0, 1e-6, 1.0)

    def test_speed_suite(self):
        reports = speed_oracle_suite(cases=10)
        assert all(r.passed for r in reports)

    def test_structural_suite(self):
        assert all(r.passed for r in structural_suite(cases=40))

    def test_bound_validity(self):
        assert all(r.passed for r in bound_validity_suite(cases=6))

    def test_closed_consistency(self):
        assert all(r.passed for r in closed_consistency_suite(cases=6))


class TestOrthogonal:
    @pytest.mark.parametrize("n,expected", [(2, 2 * math.pi), (3, 4 * math.pi), (4, 8 * math.pi)])
    def test_enumeration(self, n, expected):
        assert orthogonal_brute_force(n) == pytest.approx(expected, abs=1e-9)

    def test_matches_search(self):
        reports = orthogonal_suite()
        for r in reports:
            if r.blocking:
                assert r.passed
        closed = by_name(reports)
        assert closed["orthogonal_closed_form_n2"].passed
        assert not closed["orthogonal_closed_form_n3"].passed

    def test_range(self):
        with pytest.raises(ValidationError):
            orthogonal_brute_force(6)


class TestClosedForms:
    def test_ground_state_pair(self):
        got = shifted_pair_formula((1.0, 0.0, 0.0), (0, 1))
        lt = np.array([2 / 3, -1 / 3, -1 / 3])
        expected = np.eye(3) / 3 + np.array([[lt[0], lt[2], lt[1]], [lt[2], lt[1], lt[0]], [lt[1], lt[0], lt[2]]]) / 3
        assert np.allclose(got, expected, atol=1e-15)

    def test_damping_trace_value(self):
        p = math.exp(-1)
        tr, _, _ = damping_traces(0.5, 0.5, p, -p)
        assert tr == pytest.approx(5 / 9 + 2 / 3 * (0.75 * math.exp(-2) - math.exp(-1)), abs=1e-15)

    def test_blocking_checks_pass(self):
        reports = closed_form_crosscheck()
        assert [r.name for r in reports if r.blocking] == ["shifted_dft_projective_matrices", "damping_pair_traces"]
        assert all(r.passed for r in reports if r.blocking)
        assert all(r.note == "erratum-candidate" for r in reports if not r.blocking)
