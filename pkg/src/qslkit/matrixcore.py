"""Dense complex matrix types and deterministic kernels for 2 <= N <= 8.

The value types wrap read-only ``complex128`` arrays and validate their
invariants on construction. Every operation accepts either a wrapper or a
plain array-like (which is validated on the way in).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import ConvergenceError, ValidationError

MIN_DIM = 2
MAX_DIM = 8

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
TRACE_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-10

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 64


def _as_array(data) -> np.ndarray:
    if isinstance(data, ComplexMatrix):
        return data.data
    arr = np.array(data, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


class ComplexMatrix:
    """An N x N complex matrix with finite entries and 2 <= N <= 8."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = _as_array(data)
        n = arr.shape[0]
        if not MIN_DIM <= n <= MAX_DIM:
            raise ValidationError(f"dimension must lie in [{MIN_DIM}, {MAX_DIM}], got {n}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("matrix has non-finite entries")
        self.data = arr if not arr.flags.writeable and arr.dtype == np.complex128 else _freeze(arr)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})\n{np.array2string(self.data, precision=6)}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return type(self) is type(other) and np.array_equal(self.data, other.data)

    __hash__ = None


class HermitianOperator(ComplexMatrix):
    """A Hermitian matrix: ``max|A - A^H| <= 1e-12 (1 + max|A|)``.

    The stored data is exactly Hermitian (symmetrized after the check).
    """

    __slots__ = ()

    def __init__(self, data):
        super().__init__(data)
        a = self.data
        scale = 1.0 + float(np.max(np.abs(a)))
        asym = float(np.max(np.abs(a - a.conj().T)))
        if asym > HERMITIAN_TOL * scale:
            i, j = np.unravel_index(np.argmax(np.abs(a - a.conj().T)), a.shape)
            raise ValidationError(
                f"matrix is not Hermitian: entry ({i}, {j}) differs from the conjugate "
                f"of ({j}, {i}) by {asym:.3e}"
            )
        if asym > 0.0:
            self.data = _freeze(0.5 * (a + a.conj().T))


class DensityMatrix(HermitianOperator):
    """A quantum state: Hermitian, unit trace, positive semidefinite.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero (and the trace
    renormalized); anything more negative is rejected.
    """

    __slots__ = ()

    def __init__(self, data, *, check_spectrum: bool = True):
        super().__init__(data)
        a = self.data
        tr = np.trace(a)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace must be 1, got {tr.real:.12g}{tr.imag:+.3g}j")
        if check_spectrum:
            w = np.linalg.eigvalsh(a)
            if w[0] < -NEGATIVE_EIG_TOL:
                raise ValidationError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
            if w[0] < 0.0:
                dec = eig_hermitian(a)
                vals = np.clip(dec.values, 0.0, None)
                vals = vals / vals.sum()
                vecs = dec.vectors.data
                self.data = _freeze((vecs * vals) @ vecs.conj().T)

    @property
    def purity(self) -> float:
        # roundoff can push a pure state's purity just past 1
        return min(1.0, float(np.sum(np.abs(self.data) ** 2)))


class UnitaryMatrix(ComplexMatrix):
    """A unitary matrix: ``max|U^H U - I| <= 1e-10``."""

    __slots__ = ()

    def __init__(self, data):
        super().__init__(data)
        u = self.data
        err = float(np.max(np.abs(u.conj().T @ u - np.eye(self.dim))))
        if err > UNITARY_TOL:
            raise ValidationError(f"matrix is not unitary (max|U^H U - I| = {err:.3e})")


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with matching eigenvector columns."""

    values: np.ndarray
    vectors: UnitaryMatrix

    def reconstruct(self) -> np.ndarray:
        v = self.vectors.data
        return (v * self.values) @ v.conj().T


def as_hermitian(a) -> HermitianOperator:
    return a if isinstance(a, HermitianOperator) else HermitianOperator(a)


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def as_unitary(u) -> UnitaryMatrix:
    return u if isinstance(u, UnitaryMatrix) else UnitaryMatrix(u)


def hs_inner(a, b) -> float:
    """Hilbert-Schmidt inner product ``Tr(a^H b)`` of two Hermitian operators."""
    a = as_hermitian(a).data
    b = as_hermitian(b).data
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    val = np.vdot(a, b)
    scale = 1.0 + float(np.sqrt(np.vdot(a, a).real * np.vdot(b, b).real))
    assert abs(val.imag) <= 1e-12 * scale, "Hermitian inner product has an imaginary part"
    return float(val.real)


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its leading significant entry is real positive.

    "Leading significant" is the first entry whose modulus is within 1e-8 of
    the column's largest modulus, which keeps the choice stable under
    roundoff when several entries tie.
    """
    v = np.array(vectors, dtype=np.complex128, copy=True)
    mags = np.abs(v)
    lead = np.argmax(mags >= mags.max(axis=-2, keepdims=True) - 1e-8, axis=-2)
    picked = np.take_along_axis(v, lead[..., None, :], axis=-2)
    phase = np.conj(picked) / np.abs(picked)
    return v * phase


def _eigh_stack(stack: np.ndarray):
    """Batched Jacobi; returns ascending values and phase-fixed vectors."""
    w, v, sweeps = kernels.jacobi_eigh_batch(
        np.ascontiguousarray(stack, dtype=np.complex128), JACOBI_TOL, JACOBI_MAX_SWEEPS
    )
    if np.any(sweeps < 0):
        bad = int(np.flatnonzero(sweeps < 0)[0])
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge within {JACOBI_MAX_SWEEPS} sweeps (matrix {bad})"
        )
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return w, fix_phases(v)


def eig_hermitian(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian operator by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius mass drops to 1e-13 of the
    Frobenius norm. Eigenvalues ascend; ties keep the order produced by the
    rotation sequence, so the result is a pure function of the input bits.

    Raises:
        ConvergenceError: the sweep budget ran out.
    """
    a = as_hermitian(a).data
    w, v = _eigh_stack(a[None])
    return EigenDecomposition(values=w[0], vectors=UnitaryMatrix(v[0]))


def propagator(h, t: float) -> UnitaryMatrix:
    """``exp(-i H t)`` via the eigendecomposition of ``H``."""
    dec = eig_hermitian(h)
    v = dec.vectors.data
    return UnitaryMatrix((v * np.exp(-1j * dec.values * t)) @ v.conj().T)


@functools.lru_cache(maxsize=64)
def fourier_matrix(n: int, shift: int = 0) -> np.ndarray:
    """Raw DFT array with entries ``exp(2 pi i (m+shift)(k+shift)/n)/sqrt(n)``.

    The result is cached and read-only.
    """
    idx = np.arange(n) + shift
    # reduce the exponent mod n before scaling to keep the phases exact
    expo = np.outer(idx, idx) % n
    return _freeze(np.exp(2j * np.pi * expo / n) / math.sqrt(n))


def fourier_unitary(n: int) -> UnitaryMatrix:
    """DFT unitary ``U_{mk} = exp(2 pi i m k / n) / sqrt(n)``, zero-based."""
    if n < MIN_DIM:
        raise ValidationError(f"Fourier dimension must be >= {MIN_DIM}, got {n}")
    return UnitaryMatrix(fourier_matrix(n))


def permutation_unitary(perm: Sequence[int]) -> UnitaryMatrix:
    """Permutation matrix with ``U[perm[j], j] = 1``."""
    perm = [int(p) for p in perm]
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValidationError(f"not a permutation of 0..{n - 1}: {perm}")
    u = np.zeros((n, n), dtype=np.complex128)
    u[perm, np.arange(n)] = 1.0
    return UnitaryMatrix(u)


# -- seeded randomness ---------------------------------------------------------
#
# Philox4x64 (counter based) keyed directly by the 64-bit seed supplies the
# uniforms; normals come from Box-Muller on consecutive uniform pairs.


def uniforms(seed: int, size: int) -> np.ndarray:
    """Uniform deviates on ``[0, 1)`` from a Philox stream keyed by ``seed``."""
    bitgen = np.random.Philox(key=int(seed) % 2**64)
    return np.random.Generator(bitgen).random(size)


_uniforms = uniforms


def complex_normals(seed: int, shape) -> np.ndarray:
    """Standard complex normal deviates (E|z|^2 = 1) from a seeded stream."""
    count = int(np.prod(shape))
    u = _uniforms(seed, 2 * count).reshape(count, 2)
    radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    z = radius * (np.cos(angle) + 1j * np.sin(angle)) / math.sqrt(2.0)
    return z.reshape(shape)


def random_density(n: int, rank: int, seed: int) -> DensityMatrix:
    """Random state ``G G^H / Tr(G G^H)`` with ``G`` an ``n x rank`` Ginibre matrix."""
    if not MIN_DIM <= n <= MAX_DIM:
        raise ValidationError(f"dimension must lie in [{MIN_DIM}, {MAX_DIM}], got {n}")
    if not 1 <= rank <= n:
        raise ValidationError(f"rank must lie in [1, {n}], got {rank}")
    g = complex_normals(seed, (n, rank))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityMatrix(0.5 * (rho + rho.conj().T), check_spectrum=False)


def random_unitary(n: int, seed: int) -> UnitaryMatrix:
    """Haar-random unitary: Gram-Schmidt (twice) on a complex Ginibre matrix.

    Gram-Schmidt makes the diagonal of the triangular factor real positive,
    which fixes the phase convention.
    """
    if not MIN_DIM <= n <= MAX_DIM:
        raise ValidationError(f"dimension must lie in [{MIN_DIM}, {MAX_DIM}], got {n}")
    z = complex_normals(seed, (n, n))
    q = np.zeros_like(z)
    for k in range(n):
        col = z[:, k].copy()
        for _ in range(2):
            col -= q[:, :k] @ (q[:, :k].conj().T @ col)
        q[:, k] = col / np.linalg.norm(col)
    return UnitaryMatrix(q)


def random_hermitian(n: int, seed: int, scale: float = 1.0) -> HermitianOperator:
    """GUE-like Hermitian matrix, handy for fuzzing."""
    z = complex_normals(seed, (n, n))
    return HermitianOperator(scale * 0.5 * (z + z.conj().T))


__all__ = [
    "ComplexMatrix",
    "DensityMatrix",
    "EigenDecomposition",
    "HermitianOperator",
    "UnitaryMatrix",
    "as_density",
    "as_hermitian",
    "as_unitary",
    "complex_normals",
    "eig_hermitian",
    "fix_phases",
    "fourier_matrix",
    "fourier_unitary",
    "hs_inner",
    "permutation_unitary",
    "propagator",
    "random_density",
    "random_hermitian",
    "random_unitary",
    "uniforms",
]
