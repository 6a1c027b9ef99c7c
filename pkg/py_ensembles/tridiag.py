"""
Jacobi matrices, their spectral projections onto (0, +inf) and the scaled difference operators of the edge limits.

Classes:
    TridiagMatrix: Real symmetric tridiagonal matrix, finite or lazily generated.
    SpectralProjection: Spectral projection of a truncated Jacobi matrix.

Functions:
    build_limit_jacobi: Jacobi matrix of a discrete Hermite/Laguerre/Jacobi ensemble.
    build_prelimit_jacobi: Jacobi matrix A_N of an N-point discrete orthogonal polynomial ensemble.
    default_scale: Default normalization c_N of a pre-limit matrix.
    prelimit_threshold: Spectral threshold separating the N positive eigenvalues of A_N.
    eigen_sym_tridiag: Full eigendecomposition of a truncation.
    spectral_projection_plus: Projection onto the positive spectrum of a truncation.
    projection_block: Window block of the positive-spectrum projection of a large truncation.
    prelimit_kernel_block: Christoffel-Darboux kernel block computed as the projection [A_N]_+.
    divergence_check: Growth rate of the off-diagonal.
    scaled_lattice_point: Lattice point and effective v of the edge scaling.
    apply_scaled_operator: Normalized action of a DH/DL difference operator on a scaled test function.
    airy_operator: Action g'' - v g of the Airy operator.
"""

import logging
from typing import Callable, NamedTuple, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, eigh_tridiagonal, eigvalsh_tridiagonal

from .configuration import DiscreteEnsembleSpec
from .exceptions import ConvergenceError, EnsembleWarnings, ParameterError, DomainError
from .orthopoly import FamilySpec, difference_operator, jacobi_coefficients, orthonormal_functions
from .scaling import ensemble_scaling
from .vars import NEAR_ZERO_EIGENVALUE

logger = logging.getLogger(__name__)


class TridiagMatrix:
    """
    Real symmetric tridiagonal matrix

    Attributes:
        size: Number of rows, None for a semi-infinite matrix
    """

    def __init__(
        self,
        diagonal: Callable[[NDArray], NDArray],
        off_diagonal: Callable[[NDArray], NDArray],
        size: int | None = None,
    ) -> None:
        """
        Initialize TridiagMatrix object

        :param diagonal: Vectorized map x -> A(x, x)
        :param off_diagonal: Vectorized map x -> A(x, x+1)
        :param size: Number of rows, None for a semi-infinite matrix (optional)
        """
        self.__diagonal = diagonal
        self.__off_diagonal = off_diagonal
        self.__size = size

    @classmethod
    def finite(cls, diagonal: ArrayLike, off_diagonal: ArrayLike) -> "TridiagMatrix":
        """
        Builds a finite matrix from its entries

        :param diagonal: The n diagonal entries
        :param off_diagonal: The n-1 entries A(x, x+1) (an extra trailing entry is ignored)
        :return: The matrix
        """
        d = np.array(diagonal, dtype=float)
        e = np.array(off_diagonal, dtype=float)[: max(d.size - 1, 0)]
        if e.size != max(d.size - 1, 0):
            raise ParameterError("off_diagonal", f"expected {d.size - 1} entries, got {e.size}")
        padded = np.append(e, 0.0)
        return cls(lambda x: d[x], lambda x: padded[x], d.size)

    @property
    def size(self) -> int | None:
        """
        :return: Number of rows, None for a semi-infinite matrix
        """
        return self.__size

    def __check(self, n: int) -> None:
        if n < 1:
            raise ParameterError("n", "truncation size must be positive")
        if self.__size is not None and n > self.__size:
            raise ParameterError("n", f"matrix has only {self.__size} rows")

    def diagonal(self, n: int) -> NDArray:
        """
        :param n: Number of entries
        :return: A(x, x) for x = 0..n-1
        """
        self.__check(n)
        return np.asarray(self.__diagonal(np.arange(n)), dtype=float)

    def off_diagonal(self, n: int) -> NDArray:
        """
        :param n: Number of entries
        :return: A(x, x+1) for x = 0..n-1
        """
        if n == 0:
            return np.zeros(0)
        return np.asarray(self.__off_diagonal(np.arange(n)), dtype=float)

    def truncation(self, n: int) -> Tuple[NDArray, NDArray]:
        """
        Top-left n x n block

        :param n: Truncation size
        :return: Diagonal (n entries) and off-diagonal (n-1 entries)
        :raises ParameterError: If an off-diagonal entry is negative
        """
        self.__check(n)
        d, e = self.diagonal(n), self.off_diagonal(n - 1)
        if np.any(e < 0) or np.any(~np.isfinite(e)) or np.any(~np.isfinite(d)):
            raise ParameterError("off_diagonal", "a Jacobi matrix needs finite entries and a nonnegative off-diagonal")
        return d, e

    def dense(self, n: int) -> NDArray:
        """
        :param n: Truncation size
        :return: The top-left n x n block as a dense array
        """
        d, e = self.truncation(n)
        return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)

    def scaled(self, c: float) -> "TridiagMatrix":
        """
        :param c: Positive factor
        :return: The matrix c * A
        """
        if not c > 0:
            raise ParameterError("c", "scaling factor must be positive")
        diagonal, off_diagonal = self.__diagonal, self.__off_diagonal
        return TridiagMatrix(lambda x: c * diagonal(x), lambda x: c * off_diagonal(x), self.__size)


class SpectralProjection(NamedTuple):
    """
    Projection onto the eigenvectors of a truncation with eigenvalue above the threshold

    Attributes:
        window: Size of the truncation
        matrix: The n x n projection matrix
        threshold: Spectral threshold (0 for [A]_+)
    """

    window: int
    matrix: NDArray
    threshold: float


# ----------------------------------------------------------------------------------------------------------------------
# CONSTRUCTION


def build_limit_jacobi(spec: DiscreteEnsembleSpec) -> TridiagMatrix:
    """
    Jacobi matrix of the operator +-(T - rho) in the orthonormal polynomial basis

    The off-diagonal is kept positive for both signs, so the minus ensembles come out in the gauge (-1)^(x+y).

    :param spec: Discrete ensemble
    :return: Semi-infinite matrix with A(x, x) = +-(b_x - rho) and A(x, x+1) = a_x
    """
    family = spec.family
    sign = 1.0 if spec.is_plus else -1.0

    def diagonal(x: NDArray) -> NDArray:
        d, _ = jacobi_coefficients(family, int(np.max(x)) + 1)
        return sign * (d[x] - spec.rho)

    def off_diagonal(x: NDArray) -> NDArray:
        _, e = jacobi_coefficients(family, int(np.max(x)) + 1)
        return e[x]

    return TridiagMatrix(diagonal, off_diagonal)


def default_scale(spec: FamilySpec, N: int) -> float:
    """
    Default normalization c_N: sqrt(2N) for Charlier, 1 for Meixner, sqrt(2pM) for Krawtchouk, M for Hahn,
    M^2/2 for Racah

    :param spec: Discrete family
    :param N: Number of particles
    :return: c_N
    """
    match spec.family:
        case "charlier":
            return float(np.sqrt(2 * N))
        case "meixner":
            return 1.0
        case "krawtchouk":
            return float(np.sqrt(2 * spec.p * spec.M))
        case "hahn":
            return float(spec.M)
        case "racah":
            return spec.M**2 / 2
    raise ParameterError("family", f"{spec} is not a discrete family")


def build_prelimit_jacobi(spec: FamilySpec, N: int, c_N: float = None) -> TridiagMatrix:
    """
    Jacobi matrix A_N = (D + mu_N) / c_N in the orthonormal basis W(x)^(1/2) delta_x

    A_N(x, x+1) = sqrt(W(x)/W(x+1)) D(x, x+1) / c_N, which equals sqrt(D(x, x+1) D(x+1, x)) / c_N by detailed
    balance. Finite supports are extended by the constant -1 beyond M.

    :param spec: Discrete family
    :param N: Number of particles
    :param c_N: Positive normalization (default: default_scale)
    :return: Semi-infinite matrix whose positive eigenvectors span the first N orthonormal functions
    """
    operator = difference_operator(spec)
    size = spec.support_size
    if N < 1 or (size is not None and N > size):
        raise ParameterError("N", f"{spec} admits between 1 and {size} particles")
    c = default_scale(spec, N) if c_N is None else float(c_N)
    if not c > 0:
        raise ParameterError("c_N", "normalization must be positive")
    mu_N = float(operator.mu(N))
    last = np.inf if size is None else size - 1

    def diagonal(x: NDArray) -> NDArray:
        inside = np.minimum(x, last)
        value = (-operator.up(inside) - operator.down(inside) + mu_N) / c
        return np.where(x > last, -1.0, value)

    def off_diagonal(x: NDArray) -> NDArray:
        inside = np.minimum(x, last)
        value = np.sqrt(np.clip(operator.up(inside) * operator.down(inside + 1), 0.0, None)) / c
        return np.where(x >= last, 0.0, value)

    return TridiagMatrix(diagonal, off_diagonal)


def prelimit_threshold(spec: FamilySpec, N: int, c_N: float = None) -> float:
    """
    Threshold halfway between the smallest positive eigenvalue (mu_N - mu_{N-1}) / c_N of A_N and its exact zero
    eigenvalue (mu_N - mu_N) / c_N, so that the projection onto (0, +inf) is taken without rounding ambiguity

    :param spec: Discrete family
    :param N: Number of particles
    :param c_N: Normalization (default: default_scale)
    :return: The threshold
    """
    operator = difference_operator(spec)
    c = default_scale(spec, N) if c_N is None else float(c_N)
    return float(0.5 * (operator.mu(N) - operator.mu(N - 1)) / c)


# ----------------------------------------------------------------------------------------------------------------------
# SPECTRAL PROJECTIONS


def eigen_sym_tridiag(m: TridiagMatrix, n: int) -> Tuple[NDArray, NDArray]:
    """
    Eigendecomposition of the top-left n x n block

    :param m: Jacobi matrix
    :param n: Truncation size
    :return: Ascending eigenvalues and the orthonormal eigenvectors as columns
    :raises ConvergenceError: If the LAPACK eigensolver does not converge
    """
    d, e = m.truncation(n)
    if n == 1:
        return d.copy(), np.ones((1, 1))
    try:
        return eigh_tridiagonal(d, e)
    except LinAlgError:
        raise ConvergenceError(message=f"tridiagonal eigensolver failed for size {n}") from None


def _warn_degenerate(eigenvalues: NDArray, threshold: float) -> NDArray:
    near = np.abs(eigenvalues - threshold) < NEAR_ZERO_EIGENVALUE
    for eigenvalue in eigenvalues[near]:
        EnsembleWarnings.degenerate_threshold(float(eigenvalue))
    return near


def spectral_projection_plus(m: TridiagMatrix, n: int, threshold: float = 0.0) -> SpectralProjection:
    """
    Projection V diag(1{lambda > threshold}) V^T of the top-left n x n block

    Eigenvalues within NEAR_ZERO_EIGENVALUE of the threshold are assigned to the positive side with a warning.

    :param m: Jacobi matrix
    :param n: Truncation size
    :param threshold: Spectral threshold (default: 0)
    :return: The projection
    """
    eigenvalues, vectors = eigen_sym_tridiag(m, n)
    keep = (eigenvalues > threshold) | _warn_degenerate(eigenvalues, threshold)
    selected = vectors[:, keep]
    return SpectralProjection(n, selected @ selected.T, threshold)


def _upper_bound(d: NDArray, e: NDArray) -> float:
    radius = np.abs(d).copy()
    radius[:-1] += e
    radius[1:] += e
    return float(radius.max() + 1.0)


def projection_block(m: TridiagMatrix, n: int, window: int, threshold: float = 0.0) -> NDArray:
    """
    Window block of the positive-spectrum projection, computing only the eigenvectors above the threshold

    :param m: Jacobi matrix
    :param n: Truncation size
    :param window: Number of leading rows and columns returned
    :param threshold: Spectral threshold (default: 0)
    :return: The window x window block
    """
    if window > n:
        raise ParameterError("window", f"window {window} exceeds the truncation size {n}")
    d, e = m.truncation(n)
    if n < 2:
        return spectral_projection_plus(m, n, threshold).matrix[:window, :window]

    span = (threshold - NEAR_ZERO_EIGENVALUE, _upper_bound(d, e))
    eigenvalues = eigvalsh_tridiagonal(d, e, select="v", select_range=span)
    if eigenvalues.size == 0:
        return np.zeros((window, window))
    _warn_degenerate(eigenvalues, threshold)
    try:
        _, vectors = eigh_tridiagonal(d, e, select="v", select_range=span)
    except LinAlgError:
        raise ConvergenceError(message=f"tridiagonal eigensolver failed for size {n}") from None

    head = vectors[:window]
    logger.debug("projection of size %d kept %d eigenvectors", n, vectors.shape[1])
    return head @ head.T


def prelimit_kernel_block(spec: FamilySpec, N: int, window: int, c_N: float = None) -> NDArray:
    """
    Christoffel-Darboux kernel K_N on {0..window-1}, the positive spectral projection [A_N]_+

    Finite supports project the whole pre-limit matrix. On Z>=0 the projection is the span of the first N
    orthonormal functions, so the block is summed from their closed-form recurrences without truncating the lattice.

    :param spec: Discrete family
    :param N: Number of particles
    :param window: Number of sites
    :param c_N: Normalization (default: default_scale)
    :return: The window x window kernel block
    """
    if N < 1:
        raise ParameterError("N", "must be a positive integer")
    if spec.support_size is None:
        phi = orthonormal_functions(spec, N - 1, np.arange(window))
        return phi.T @ phi

    matrix = build_prelimit_jacobi(spec, N, c_N)
    size = spec.support_size
    threshold = prelimit_threshold(spec, N, c_N)

    block = projection_block(matrix, size, min(window, size), threshold)
    if window <= size:
        return block
    padded = np.zeros((window, window))
    padded[:size, :size] = block
    return padded


def divergence_check(m: TridiagMatrix, n: int) -> float:
    """
    Largest value of A(x, x+1) / (x+1) over x < n; a bounded value means A(x, x+1) = O(x), so sum 1/A(x, x+1)
    diverges

    :param m: Jacobi matrix
    :param n: Number of off-diagonal entries inspected
    :return: The growth constant
    """
    e = m.off_diagonal(n)
    return float(np.max(e / np.arange(1, n + 1)))


# ----------------------------------------------------------------------------------------------------------------------
# EDGE SCALING


def scaled_lattice_point(spec: DiscreteEnsembleSpec, v: float) -> Tuple[int, float]:
    """
    Lattice point x = round(sigma - tau v) and the scaled coordinate (sigma - x) / tau it corresponds to

    :param spec: DH or DL ensemble
    :param v: Scaled coordinate
    :return: The lattice point and the effective v
    :raises DomainError: If the lattice point is negative
    """
    sigma, tau, _, _ = ensemble_scaling(spec)
    x = int(np.round(sigma - tau * v))
    if x < 0:
        raise DomainError(v, f"the scaled point falls outside Z>=0 for {spec}")
    return x, (sigma - x) / tau


def apply_scaled_operator(spec: DiscreteEnsembleSpec, g: Callable[[float], float], v: float) -> float:
    """
    Normalized action of the Jacobi-matrix difference operator on f(x) = g((sigma - x) / tau)

    Returns sqrt(2) c (D f)(x) for DH and (D f)(x) / c for DL, at x = round(sigma - tau v). DH- with rho < 0 is
    handled through the symmetry DH-(rho) = DH+(-rho).

    :param spec: DH or DL ensemble
    :param g: Smooth test function
    :param v: Scaled coordinate
    :return: The normalized action, close to g''(v) - v g(v) near the edge
    """
    sigma, tau, c, _ = ensemble_scaling(spec)
    x, _ = scaled_lattice_point(spec, v)

    def f(y: int) -> float:
        return g((sigma - y) / tau)

    lower = f(x - 1) if x > 0 else 0.0
    if spec.base == "DH":
        rho = abs(spec.rho)
        value = np.sqrt((x + 1) / 2) * f(x + 1) - rho * f(x) + np.sqrt(x / 2) * lower
        return float(np.sqrt(2) * c * value)

    beta, sign = spec.beta, 1.0 if spec.is_plus else -1.0
    below = np.sqrt(x * (x + beta - 1)) * lower if x > 0 else 0.0
    value = np.sqrt((x + 1) * (x + beta)) * f(x + 1) + sign * (2 * x + beta - spec.rho) * f(x) + below
    return float(value / c)


def airy_operator(g: Callable[[float], float], dg2: Callable[[float], float], v: float) -> float:
    """
    :param g: Test function
    :param dg2: Its second derivative
    :param v: Point
    :return: g''(v) - v g(v)
    """
    return float(dg2(v) - v * g(v))
