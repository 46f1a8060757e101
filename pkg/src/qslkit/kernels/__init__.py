"""Hot numerical kernels with a numba path and a pure-numpy fallback.

The numba implementation is used when numba imports cleanly and the
environment variable ``QSLKIT_DISABLE_NUMBA`` is unset (or set to a false
value). Set ``QSLKIT_DISABLE_NUMBA=1`` to force the numpy path; the flag is
read once, at import.

Kernels
-------
jacobi_eigh_batch(a, tol, max_sweeps) -> (w, v, sweeps)
    Cyclic Jacobi on a stack of Hermitian matrices. ``w`` holds the raw
    (unsorted) diagonal, ``v`` the accumulated rotations, ``sweeps`` the
    number of sweeps used (-1 when the budget ran out).
image_norms(states, alpha) -> |F_alpha(rho_k)| for each k
curve_length(states, alpha) -> sum of angles between consecutive unit images
pair_curve_lengths(states, frames, basis, alphas) -> (N, N) per-pair lengths
pair_matrices(states, frames, basis) -> (M, N, N, N, N) projective matrices
"""

import os

from . import _numpy

_FALSEY = {"", "0", "false", "no", "off"}


def _numba_requested():
    return os.environ.get("QSLKIT_DISABLE_NUMBA", "").strip().lower() in _FALSEY


_impl = _numpy
BACKEND = "numpy"
if _numba_requested():
    try:
        from . import _numba as _impl  # noqa: F811

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is optional
        _impl = _numpy

jacobi_eigh_batch = _impl.jacobi_eigh_batch
image_norms = _impl.image_norms
curve_length = _impl.curve_length
pair_curve_lengths = _impl.pair_curve_lengths
pair_matrices = _impl.pair_matrices

__all__ = [
    "BACKEND",
    "curve_length",
    "image_norms",
    "jacobi_eigh_batch",
    "pair_curve_lengths",
    "pair_matrices",
]
