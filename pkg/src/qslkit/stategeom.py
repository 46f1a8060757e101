"""Angular state distances and the projective-matrix construction.

Conventions used throughout:

* ``F_alpha(rho) = rho - (1 + alpha - Tr rho^2)/N * I`` and the distance is
  the angle between unit-normalized images. Angles are evaluated as
  ``2 atan2(|a - b|, |a + b|)``, which equals ``arccos<a, b>`` (principal
  branch, so values lie in ``[0, pi]``) but stays accurate for nearby states.
* Projective matrices ``[rho]_ij`` are indexed by *ordered* pairs ``i != j``;
  ``[rho]_ij == [rho]_ji``, so every framed sum counts each unordered pair
  twice.
* A "basis" is the matrix whose columns are the vectors ``|i_F>``; the
  default is the zero-based DFT. Permutations relabel frame columns, which
  is the same as replacing the basis ``B`` by ``U^P B``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .errors import ValidationError
from .matrixcore import (
    MAX_DIM,
    DensityMatrix,
    HermitianOperator,
    UnitaryMatrix,
    _eigh_stack,
    as_density,
    as_unitary,
    fourier_matrix,
    permutation_unitary,
)

ALPHA_MARGIN = 1e-12
FRAME_TOL = 1e-8
DEGENERATE_PURITY_TOL = 1e-12
TIE_TOL = 1e-12


def check_alpha(alpha: float, n: int) -> float:
    """Validate ``1/N < alpha <= 1`` and return it as a float."""
    alpha = float(alpha)
    if not (alpha > 1.0 / n + ALPHA_MARGIN and alpha <= 1.0):
        raise ValidationError(f"alpha must lie in (1/{n}, 1], got {alpha!r}")
    return alpha


def alpha_assignment(values, n: int) -> np.ndarray:
    """Per-pair alphas as a symmetric ``(N, N)`` array (diagonal is NaN).

    ``values`` may be a scalar (used for every pair), an ``(N, N)`` array, or
    a mapping ``{(i, j): alpha}``; a mapping entry fills both orders.
    """
    out = np.full((n, n), np.nan)
    if isinstance(values, Mapping):
        for (i, j), a in values.items():
            if i == j:
                raise ValidationError(f"alpha assignment has a diagonal key ({i}, {j})")
            a = check_alpha(a, n)
            for key in ((i, j), (j, i)):
                if not np.isnan(out[key]) and out[key] != a:
                    raise ValidationError(f"conflicting alphas for pair {key}")
                out[key] = a
        off = ~np.eye(n, dtype=bool)
        if np.isnan(out[off]).any():
            raise ValidationError("alpha assignment does not cover every pair")
        return out
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        a = check_alpha(arr, n)
        out[~np.eye(n, dtype=bool)] = a
        return out
    if arr.shape != (n, n):
        raise ValidationError(f"alpha assignment must be ({n}, {n}), got {arr.shape}")
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i, j] = check_alpha(arr[i, j], n)
    if not np.array_equal(out[~np.eye(n, dtype=bool)], out.T[~np.eye(n, dtype=bool)]):
        raise ValidationError("alpha assignment must be symmetric")
    return out


def f_map(rho, alpha: float) -> HermitianOperator:
    """The injective shift ``rho - (1 + alpha - Tr rho^2)/N * I``."""
    rho = as_density(rho)
    n = rho.dim
    alpha = check_alpha(alpha, n)
    r = rho.data
    return HermitianOperator(r - (1.0 + alpha - rho.purity) / n * np.eye(n))


def f_norm_squared(purity: float, alpha: float, n: int) -> float:
    """``|F_alpha(rho)|^2`` from the purity alone."""
    return purity - 1.0 / n + (alpha - purity) ** 2 / n


def distance_alpha(rho, sigma, alpha: float) -> float:
    """Angle between the unit-normalized ``F_alpha`` images of two states."""
    rho = as_density(rho)
    sigma = as_density(sigma)
    if rho.dim != sigma.dim:
        raise ValidationError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    alpha = check_alpha(alpha, rho.dim)
    return float(kernels.curve_length(np.stack([rho.data, sigma.data]), alpha))


def eigenframe(rho) -> UnitaryMatrix:
    """Eigenvectors of a state ordered by non-increasing eigenvalue.

    Ties keep the Jacobi order, so a diagonal state with non-increasing
    populations (e.g. ``|0><0|``) gets the identity frame.
    """
    rho = as_density(rho)
    w, v = _eigh_stack(rho.data[None])
    order = np.argsort(-w[0], kind="stable")
    return UnitaryMatrix(v[0][:, order])


def _basis(n: int, basis) -> np.ndarray:
    if basis is None:
        return fourier_matrix(n)
    b = as_unitary(basis).data
    if b.shape[0] != n:
        raise ValidationError(f"basis dimension {b.shape[0]} does not match state dimension {n}")
    return b


def _checked_frame(rho: DensityMatrix, frame) -> np.ndarray:
    if frame is None:
        return eigenframe(rho).data
    phi = as_unitary(frame).data
    if phi.shape[0] != rho.dim:
        raise ValidationError(f"frame dimension {phi.shape[0]} does not match state dimension {rho.dim}")
    lam = phi.conj().T @ rho.data @ phi
    off = float(np.max(np.abs(lam - np.diag(np.diag(lam)))))
    if off > FRAME_TOL:
        raise ValidationError(f"frame does not diagonalize the state (off-diagonal {off:.3e})")
    return phi


@dataclass(frozen=True)
class ProjectiveFamily:
    """All projective matrices of one state in one frame.

    ``pairs[(i, j)]`` is ``[rho]_ij`` for every ordered pair ``i != j`` and
    ``offdiag[(i, j)]`` the coefficient ``lambda_ij``, so that
    ``Tr [rho]_ij^2 = 1/N + 2 |lambda_ij|^2``.
    """

    source: DensityMatrix
    frame: UnitaryMatrix
    pairs: dict
    offdiag: dict

    def purity(self, i: int, j: int) -> float:
        return float(np.sum(np.abs(self.pairs[(i, j)].data) ** 2))

    def total(self) -> np.ndarray:
        """Sum over ordered pairs; equals ``2 rho + (N - 1 - 2/N) I``."""
        return sum(p.data for p in self.pairs.values())


def projective_family(rho, frame=None, *, basis=None) -> ProjectiveFamily:
    """Build ``[rho]_ij = P rho P + (I - P)/N`` for every ordered pair.

    ``P = Phi (|i_F><i_F| + |j_F><j_F|) Phi^H`` with ``Phi`` the given frame
    (default: :func:`eigenframe`).

    Raises:
        ValidationError: ``frame`` does not diagonalize ``rho`` within 1e-8.
    """
    rho = as_density(rho)
    n = rho.dim
    phi = _checked_frame(rho, frame)
    b = _basis(n, basis)
    mats = kernels.pair_matrices(rho.data[None], phi[None], b)[0]
    coeff = b.conj().T @ (phi.conj().T @ rho.data @ phi) @ b
    pairs = {}
    offdiag = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                pairs[(i, j)] = DensityMatrix(mats[i, j], check_spectrum=False)
                offdiag[(i, j)] = complex(coeff[j, i])
    return ProjectiveFamily(source=rho, frame=UnitaryMatrix(phi), pairs=pairs, offdiag=offdiag)


def _pair_purities(rho: np.ndarray, phi: np.ndarray, b: np.ndarray) -> np.ndarray:
    mats = kernels.pair_matrices(rho[None], phi[None], b)[0]
    pur = np.sum(np.abs(mats) ** 2, axis=(-2, -1))
    np.fill_diagonal(pur, np.nan)
    return pur


def default_alphas(rho0, rhotau, frames=None, *, basis=None) -> np.ndarray:
    """Per-pair ``max(Tr [rho0]_ij^2, Tr [rhotau]_ij^2)``.

    A pair whose larger purity is within 1e-12 of ``1/N`` (both projective
    matrices are ``I/N``) falls back to ``alpha = 1``.
    """
    rho0 = as_density(rho0)
    rhotau = as_density(rhotau)
    n = rho0.dim
    phi, psi = (None, None) if frames is None else frames
    b = _basis(n, basis)
    p0 = _pair_purities(rho0.data, _checked_frame(rho0, phi), b)
    p1 = _pair_purities(rhotau.data, _checked_frame(rhotau, psi), b)
    out = np.fmax(p0, p1)
    off = ~np.eye(n, dtype=bool)
    out[off & (out <= 1.0 / n + DEGENERATE_PURITY_TOL)] = 1.0
    out[off] = np.minimum(out[off], 1.0)
    return out


def _prepare(rho, sigma, frames, alphas, basis):
    rho = as_density(rho)
    sigma = as_density(sigma)
    if rho.dim != sigma.dim:
        raise ValidationError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    n = rho.dim
    phi, psi = (None, None) if frames is None else frames
    phi = _checked_frame(rho, phi)
    psi = _checked_frame(sigma, psi)
    b = _basis(n, basis)
    if alphas is None:
        alphas = default_alphas(rho, sigma, (phi, psi), basis=b)
    else:
        alphas = alpha_assignment(alphas, n)
    states = np.stack([rho.data, sigma.data])
    return states, np.stack([phi, psi]), b, alphas


def pair_distances(rho, sigma, frames=None, alphas=None, *, basis=None) -> np.ndarray:
    """``D_{alpha_ij}([rho]_ij, [sigma]_ij)`` for every pair, as an ``(N, N)`` array."""
    states, fr, b, alphas = _prepare(rho, sigma, frames, alphas, basis)
    return kernels.pair_curve_lengths(states, fr, b, alphas)


def framed_distance(rho, sigma, frames=None, alphas=None, *, basis=None) -> float:
    """Sum of per-pair distances over all ordered pairs ``i != j``.

    ``frames`` is ``(Phi, Psi)``; each defaults to the state's eigenframe.
    ``alphas`` defaults to :func:`default_alphas`.
    """
    return float(pair_distances(rho, sigma, frames, alphas, basis=basis).sum())


def permuted_distance(rho, sigma, frames=None, alphas=None, *, basis=None):
    """Framed distance maximized over all relabelings of the frame columns.

    Returns ``(distance, permutation)``. Both frames are relabeled by the
    same permutation; ties (within 1e-12 relative) keep the
    lexicographically smallest permutation.
    """
    states, fr, b, alphas = _prepare(rho, sigma, frames, alphas, basis)
    n = states.shape[-1]
    if n > MAX_DIM:
        raise ValidationError(f"permutation search is capped at N = {MAX_DIM}")
    best = -1.0
    best_perm = None
    for perm in itertools.permutations(range(n)):
        pb = permutation_unitary(perm).data @ b
        val = float(kernels.pair_curve_lengths(states, fr, pb, alphas).sum())
        if best_perm is None or val > best + TIE_TOL * max(1.0, best):
            best, best_perm = val, perm
    return best, tuple(best_perm)


__all__ = [
    "ProjectiveFamily",
    "alpha_assignment",
    "check_alpha",
    "default_alphas",
    "distance_alpha",
    "eigenframe",
    "f_map",
    "f_norm_squared",
    "framed_distance",
    "pair_distances",
    "permuted_distance",
    "projective_family",
]
