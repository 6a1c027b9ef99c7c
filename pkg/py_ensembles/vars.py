"""
Global constants used throughout the package
"""
from typing import Literal

CONTINUOUS_FAMILIES = ("hermite", "laguerre", "jacobi")  # Families with a real weight
DISCRETE_FAMILIES = ("charlier", "meixner", "krawtchouk", "hahn", "racah")  # Families with a lattice weight

FAMILIES = Literal["hermite", "laguerre", "jacobi", "charlier", "meixner", "krawtchouk", "hahn", "racah"]
ENSEMBLE_BASES = Literal["DH", "DL", "DJ"]  # Discrete Hermite / Laguerre / Jacobi
SIGNS = Literal["+", "-"]  # Which side of the cut point the kernel projects on
S_MODES = Literal["q^-1/2", "-q^1/2"]  # Six-vertex spin parameter choices
REGIMES = Literal["DH-Airy", "DL-Airy", "ASEP-TW", "ASEP-KPZ", "6v-KPZ"]  # Scaling regimes
VERDICTS = Literal["pass", "fail"]  # Experiment verdicts
COMMANDS = Literal[
    "kernel", "gap", "sample", "simulate-asep", "simulate-6v", "qlaplace", "verify-identity", "verify-limit",
    "tw-table", "kpz-table", "schur-check",
]  # CLI subcommands

# Tolerances
QUADRATURE_TOL = 1e-13  # Absolute panel tolerance for the kernel Gram matrices
TAIL_TOL = 1e-13  # Certified bound for discarded quadrature tails
WEIGHT_TAIL_TOL = 1e-15  # Relative residual mass for truncated discrete supports
WEIGHT_TAIL_MAX = 1e-13  # Residual mass that triggers an accuracy error
CONTOUR_TOL = 1e-10  # Node-doubling agreement for contour integrals
NYSTROM_TOL = 1e-9  # Node-doubling agreement for Airy Fredholm determinants
NEAR_ZERO_EIGENVALUE = 1e-9  # Eigenvalues closer to 0 are flagged by spectral projections
EIGENVALUE_CLAMP = 1e-8  # Kernel eigenvalues silently clamped into [0, 1]
EIGENVALUE_REJECT = 1e-6  # Kernel eigenvalues rejected outside [-x, 1+x]
PROJECTION_TOL = 1e-8  # Largest entry of K^2 - K accepted for a projection kernel
POLE_DISTANCE = 1e-12  # Minimal |1 + zeta q^k| for q-Laplace factors
Q_PRODUCT_TOL = 1e-16  # Infinite q-products stop once the factor is this close to 1

# Defaults
DEFAULT_RACAH_CONST = 1.0  # Free constant of the Racah tuning
GAUSS_NODES = 24  # Nodes per quadrature panel
NYSTROM_NODES = 80  # Starting Nyström order for Airy determinants
CONTOUR_NODES = 64  # Starting trapezoidal node count on circles
ASEP_EDGE_GUARD = 5  # Overflow is raised when a particle/hole gets this close to a window edge
REPLICA_CHUNK = 256  # Replicas handed to a worker at once

WORKERS_ENV = "PY_ENSEMBLES_WORKERS"  # Environment variable with the default worker count

# Exit codes
EXIT_SUCCESS = 0  # Command succeeded or every experiment row passed
EXIT_FAIL = 1  # An experiment row failed
EXIT_USAGE = 2  # Bad flag, configuration key or parameter
EXIT_ACCURACY = 3  # A numerical routine missed its accuracy target

SEED_BOUND = 2**64  # Seeds are 64-bit unsigned integers
