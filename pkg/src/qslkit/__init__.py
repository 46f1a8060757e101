"""Quantum speed limits from an angular metric on density matrices.

The main entry points are :func:`tau_alpha` (single-metric bound) and
:func:`tau_qsl` (bound summed over the projective pairs of a continuous
eigenframe), evaluated on trajectories from :mod:`qslkit.dynamics`.
"""

from ._version import __version__
from .dynamics import (
    ConstantDecay,
    OhmicDecay,
    amplitude_damping_trajectory,
    custom_trajectory,
    decay_rate,
    dephasing_trajectory,
    depolarizing_trajectory,
    driven_hamiltonian,
    gamma_integral,
    track_frame,
    unitary_trajectory,
)
from .errors import (
    ConvergenceError,
    CrosscheckError,
    DegenerateBoundError,
    FrameTrackingError,
    QslError,
    ValidationError,
)
from .matrixcore import DensityMatrix, HermitianOperator, UnitaryMatrix, fourier_matrix, random_density
from .qslbounds import (
    EnergySpec,
    QslReport,
    energy_variance,
    saturating_hamiltonian,
    saturating_initial_state,
    speed_alpha,
    tau_alpha,
    tau_qsl,
    tau_qsl_closed,
    tau_qsl_orthogonal,
)
from .stategeom import (
    default_alphas,
    distance_alpha,
    eigenframe,
    framed_distance,
    permuted_distance,
    projective_family,
)

__all__ = [
    "ConstantDecay",
    "ConvergenceError",
    "CrosscheckError",
    "DegenerateBoundError",
    "DensityMatrix",
    "EnergySpec",
    "FrameTrackingError",
    "HermitianOperator",
    "OhmicDecay",
    "QslError",
    "QslReport",
    "UnitaryMatrix",
    "ValidationError",
    "__version__",
    "amplitude_damping_trajectory",
    "custom_trajectory",
    "decay_rate",
    "default_alphas",
    "dephasing_trajectory",
    "depolarizing_trajectory",
    "distance_alpha",
    "driven_hamiltonian",
    "eigenframe",
    "energy_variance",
    "fourier_matrix",
    "framed_distance",
    "gamma_integral",
    "permuted_distance",
    "projective_family",
    "random_density",
    "saturating_hamiltonian",
    "saturating_initial_state",
    "speed_alpha",
    "tau_alpha",
    "tau_qsl",
    "tau_qsl_closed",
    "tau_qsl_orthogonal",
    "track_frame",
    "unitary_trajectory",
]
