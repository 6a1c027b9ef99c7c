"""
Python Discrete Ensembles Library.

This package builds discrete determinantal ensembles from cut points of the Hermite, Laguerre and Jacobi polynomial
systems, computes their kernels, gap probabilities and q-Laplace transforms, and checks them against the ASEP and the
stochastic six-vertex model they describe.

Modules:
    orthopoly: Classical and discrete orthogonal polynomial families, weights and recurrences.

    kernels: Kernels of the discrete ensembles, Christoffel-Darboux kernels and the Airy kernel.

    tridiag: Jacobi matrices, their positive-spectrum projections and the scaled difference operators.

    scaling: Closed-form scaling constants of the Airy, Tracy-Widom and KPZ regimes.

    fredholm: Gap probabilities, multiplicative functionals and the Airy Fredholm determinants.

    dpp: Exact sampling of determinantal point processes on a window.

    qlaplace: q-Pochhammer symbols, q-Laplace transforms and their contour inversion.

    schur: Partitions, Schur measures and their pushforwards onto Meixner and Krawtchouk ensembles.

    simulators: Monte Carlo ASEP and stochastic six-vertex model.

    harness: Experiments comparing every identity and limit against an independent computation.

    cli: Command-line entry point (python -m py_ensembles).

Classes:
    FamilySpec: Orthogonal polynomial family and its parameters.

    DiscreteEnsembleSpec: Discrete Hermite, Laguerre or Jacobi ensemble of a given sign and cut point.

    PointConfiguration: Finite configuration of points on the nonnegative integers.

    KernelMatrix: Symmetric kernel restricted to a window.

    TridiagMatrix: Symmetric tridiagonal matrix, finite or semi-infinite.

    QLaplaceParams: Base and transform variable of a q-Laplace transform.

    EnsembleWarnings: Collection of warnings raised by the numerical routines.

Functions:
    kernel_matrix: Kernel of a discrete ensemble on a window.

    gap_det_discrete: Gap probability of a discrete ensemble.

    gap_det_continuous: Gap probability of a continuous orthogonal polynomial ensemble.

    q_laplace_config: q-Laplace transform of a configuration or a discrete ensemble.

    sample_dpp: Exact sample of a determinantal point process.

Exceptions:
    ParameterError: Raised when a family, ensemble or model parameter is out of range.

    DomainError: Raised when a point lies outside the domain of a function.

    AccuracyError: Raised when a numerical routine misses its accuracy target.

    ConvergenceError: Raised when an iteration does not converge.

    KernelValidityError: Raised when a kernel has eigenvalues outside [0, 1].

    WindowOverflowError: Raised when a simulation reaches the edge of its window.
"""

# Export exceptions
from .exceptions import (
    EnsembleWarnings, ParameterError, DomainError, AccuracyError, ConvergenceError, KernelValidityError,
    WindowOverflowError
)

# Export families and ensembles
from .orthopoly import FamilySpec
from .configuration import DiscreteEnsembleSpec, PointConfiguration, input_to_configuration, input_to_ensemble

# Export the numerical routines
from .kernels import KernelMatrix, kernel_matrix
from .tridiag import TridiagMatrix
from .fredholm import gap_det_continuous, gap_det_discrete
from .qlaplace import QLaplaceParams, q_laplace_config
from .dpp import sample_dpp

__all__ = [
    "EnsembleWarnings", "ParameterError", "DomainError", "AccuracyError", "ConvergenceError", "KernelValidityError",
    "WindowOverflowError", "FamilySpec", "DiscreteEnsembleSpec", "PointConfiguration", "input_to_configuration",
    "input_to_ensemble", "KernelMatrix", "kernel_matrix", "TridiagMatrix", "gap_det_continuous", "gap_det_discrete",
    "QLaplaceParams", "q_laplace_config", "sample_dpp"
]
