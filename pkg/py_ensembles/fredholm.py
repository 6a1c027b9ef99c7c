"""
Fredholm determinants: gap probabilities, multiplicative functionals and Airy-kernel determinants.

Classes:
    MultiplicativeFunctional: Per-point factor f of E prod_{x in X} f(x), with a tail bound of 1 - f.

Functions:
    gap_det_discrete: Probability that a discrete ensemble has no particle in {0..N-1}.
    gap_det_continuous: Gap probability of the N-point continuous orthogonal polynomial ensemble on a half-line.
    interval_gram: Gram matrix of the orthonormal functions over a sub-interval (re-exported from kernels).
    expect_multiplicative: E prod f(x) over a discrete determinantal process.
    tracy_widom_gue: GUE Tracy-Widom distribution function.
    airy_statistic_moments: Mean and second factorial moment of sum exp(tau z) over Airy particles below M.
    kpz_laplace_rhs: E prod 1 / (1 + zeta exp(tau z)) over the Airy ensemble.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad
from scipy.special import gammaincc, gamma

from .configuration import DiscreteEnsembleSpec
from .exceptions import AccuracyError, ParameterError
from .kernels import KernelMatrix, airy_kernel, interval_gram, kernel_matrix
from .orthopoly import FamilySpec
from .utils import panel_rule
from .vars import NYSTROM_NODES, NYSTROM_TOL

logger = logging.getLogger(__name__)

MAX_WINDOW = 4096  # Largest window tried by expect_multiplicative
MAX_NYSTROM_NODES = 640  # Largest order tried by tracy_widom_gue


@dataclass(frozen=True)
class MultiplicativeFunctional:
    """
    Factor of a multiplicative functional

    Attributes:
        factor: Vectorized map z -> f(z), real in (0, 1] or complex
        decay_bound: Map Z -> bound of sum_{z > Z} |1 - f(z)|, None when unknown
    """

    factor: Callable[[NDArray], NDArray]
    decay_bound: Callable[[int], float] | None = None

    @classmethod
    def q_laplace(cls, zeta: complex, q: float, shift: int = 0) -> "MultiplicativeFunctional":
        """
        Factor 1 / (1 + zeta q^(z + shift)) of the q-Laplace transform of the shifted configuration

        :param zeta: Transform variable
        :param q: Base in (0, 1)
        :param shift: Deterministic shift S of all points (default: 0)
        :return: The functional
        """
        if not 0 < q < 1:
            raise ParameterError("q", "must lie strictly inside (0, 1)")
        size = abs(zeta)

        def factor(z: NDArray) -> NDArray:
            return 1.0 / (1.0 + zeta * q ** (np.asarray(z, dtype=float) + shift))

        def decay_bound(Z: int) -> float:
            head = size * q ** (Z + 1 + shift)
            if head >= 1:
                return np.inf
            return head / ((1 - q) * (1 - head))

        return cls(factor, decay_bound)

    def __call__(self, z: NDArray) -> NDArray:
        return self.factor(z)


# ----------------------------------------------------------------------------------------------------------------------
# GAP PROBABILITIES


def gap_det_discrete(spec: DiscreteEnsembleSpec, N: int) -> float:
    """
    Probability that the discrete ensemble has no particle in {0..N-1}

    :param spec: Discrete ensemble
    :param N: Number of sites, N = 0 gives 1
    :return: det(1 - K) on {0..N-1}
    """
    if N < 0:
        raise ParameterError("N", "must be nonnegative")
    if N == 0:
        return 1.0
    K = kernel_matrix(spec, N - 1)
    return float(np.clip(np.linalg.det(np.eye(N) - K.entries), 0.0, 1.0))


def gap_det_continuous(family: FamilySpec, N: int, interval: Tuple[float, float]) -> float:
    """
    Probability that the N-point orthogonal polynomial ensemble of a continuous family has no particle in the
    interval, det(1 - G) with G(x, y) = int_I P~_x P~_y W over x, y < N

    The matching discrete ensembles are DH/DL/DJ+(rho) for (rho, +inf) and DH/DL/DJ-(rho) for (-inf, rho).

    :param family: Continuous family
    :param N: Number of particles
    :param interval: (lo, hi) inside the support
    :return: The gap probability
    """
    if N < 0:
        raise ParameterError("N", "must be nonnegative")
    if N == 0:
        return 1.0
    lo, hi = float(interval[0]), float(interval[1])
    s_lo, s_hi = family.interval
    gram = interval_gram(family, max(lo, s_lo), min(hi, s_hi), N - 1)
    return float(np.clip(np.linalg.det(np.eye(N) - gram), 0.0, 1.0))


# ----------------------------------------------------------------------------------------------------------------------
# MULTIPLICATIVE FUNCTIONALS


def _window_determinant(K: NDArray, values: NDArray) -> complex | float:
    if np.iscomplexobj(values):
        return complex(np.linalg.det(np.eye(K.shape[0]) - (1 - values)[:, None] * K))
    g = np.sqrt(np.clip(1 - values, 0.0, None))
    return float(np.linalg.det(np.eye(K.shape[0]) - g[:, None] * K * g[None, :]))


def expect_multiplicative(
    source: KernelMatrix | DiscreteEnsembleSpec, f: MultiplicativeFunctional, tol: float = 1e-12
) -> float | complex:
    """
    E prod_{x in X} f(x) = det(1 - (1 - f) K)

    Real factors in (0, 1] use the symmetric form det(1 - D_g K D_g) with g = sqrt(1 - f). For an ensemble the
    window {0..Z} is the smallest one whose decay bound is below 0.1 tol, or, without a decay bound, the first one
    that stops changing by more than tol under doubling. A kernel matrix is used on its whole window.

    :param source: Kernel on a window, or a discrete ensemble
    :param f: Multiplicative functional
    :param tol: Target accuracy (default: 1e-12)
    :return: The expectation
    :raises AccuracyError: If no window up to MAX_WINDOW reaches the target
    """
    if isinstance(source, KernelMatrix):
        return _window_determinant(source.entries, f(np.arange(source.size)))

    if f.decay_bound is not None:
        Z = 15
        while f.decay_bound(Z) >= 0.1 * tol:
            Z = 2 * Z + 1
            if Z > MAX_WINDOW:
                raise AccuracyError(f.decay_bound(Z), "no finite window reaches the requested tolerance")
        Z = _tightest_window(f, Z, tol)
        logger.debug("multiplicative functional on %s uses window 0..%d", source, Z)
        K = kernel_matrix(source, Z)
        return _window_determinant(K.entries, f(np.arange(Z + 1)))

    Z, previous = 15, None
    while Z <= MAX_WINDOW:
        value = _window_determinant(kernel_matrix(source, Z).entries, f(np.arange(Z + 1)))
        if previous is not None and abs(value - previous) < tol:
            return value
        previous, Z = value, 2 * Z + 1
    raise AccuracyError(abs(value - previous), "window doubling did not stabilize")


def _tightest_window(f: MultiplicativeFunctional, Z: int, tol: float) -> int:
    lo = Z // 2
    while lo < Z:
        mid = (lo + Z) // 2
        if f.decay_bound(mid) < 0.1 * tol:
            Z = mid
        else:
            lo = mid + 1
    return Z


# ----------------------------------------------------------------------------------------------------------------------
# AIRY DETERMINANTS


def _tw_nystrom(s: float, m: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(m)
    angle = np.pi * (nodes + 1) / 4
    points = s + 10 * np.tan(angle)
    jacobian = 10 * (np.pi / 4) / np.cos(angle) ** 2
    root = np.sqrt(weights * jacobian)
    kernel = airy_kernel(points[:, None], points[None, :])
    return float(np.linalg.det(np.eye(m) - root[:, None] * kernel * root[None, :]))


def tracy_widom_gue(s: float) -> float:
    """
    GUE Tracy-Widom distribution F(s) = det(1 - K_Airy) on L^2(s, +inf)

    Gauss-Legendre Nystrom on the map x = s + 10 tan(pi (u + 1) / 4), doubling the order from NYSTROM_NODES until two
    consecutive orders agree to NYSTROM_TOL.

    :param s: Point
    :return: F(s)
    :raises AccuracyError: If the order doubling does not settle
    """
    m = NYSTROM_NODES
    previous = _tw_nystrom(s, m)
    while m < MAX_NYSTROM_NODES:
        m *= 2
        value = _tw_nystrom(s, m)
        if abs(value - previous) < NYSTROM_TOL:
            return float(np.clip(value, 0.0, 1.0))
        previous = value
    raise AccuracyError(abs(value - previous), f"Nystrom order doubling did not settle at s={s}")


def _airy_diagonal_tail(L: float, tau_hat: float) -> float:
    """
    Bound of int_{-inf}^L K_Airy(x, x) exp(tau x) dx for L <= -1, from K_Airy(x, x) <= sqrt|x| / pi + 1
    """
    u = tau_hat * abs(L)
    root = gamma(1.5) * gammaincc(1.5, u) / (np.pi * tau_hat**1.5)
    return float(root + np.exp(-u) / tau_hat)


def _lower_cut(tau_hat: float, M: float, tol: float) -> float:
    L = min(M, -1.0) - 1.0
    while _airy_diagonal_tail(L, tau_hat) > tol:
        L -= 2.0
    return L


def _airy_grid(lo: float, hi: float, nodes: int) -> Tuple[NDArray, NDArray]:
    count = max(1, int(np.ceil(hi - lo)))
    edges = np.linspace(lo, hi, count + 1)
    parts = [panel_rule(a, b, nodes) for a, b in zip(edges[:-1], edges[1:])]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def airy_statistic_moments(M: float, tau_hat: float) -> Tuple[float, float]:
    """
    Mean and second factorial moment of S_M = sum_{z < M} exp(tau_hat z) over the Airy ensemble

    E S_M = int_{-inf}^M K(x, x) e^{tau x} dx and E S_M (S_M - 1) = (E S_M)^2 - int int K(x, y)^2 e^{tau (x + y)}.

    :param M: Upper end
    :param tau_hat: Positive rate
    :return: The mean and the second factorial moment
    """
    if not tau_hat > 0:
        raise ParameterError("tau_hat", "must be positive")
    L = _lower_cut(tau_hat, M, 1e-14)
    if L >= M:
        return 0.0, 0.0

    points, weights = _airy_grid(L, M, 24)
    damped = np.sqrt(weights) * np.exp(0.5 * tau_hat * points)
    diagonal = airy_kernel(points, points)
    mean, _ = quad(lambda x: airy_kernel(x, x) * np.exp(tau_hat * x), L, M, limit=400)

    kernel = damped[:, None] * airy_kernel(points[:, None], points[None, :]) * damped[None, :]
    second = float(np.sum(damped**2 * diagonal)) ** 2 - float(np.sum(kernel**2))
    return float(mean), second


def _kpz_nystrom(zeta_hat: float, tau_hat: float, L: float, R: float, nodes: int) -> float:
    points, weights = _airy_grid(L, R, nodes)
    scaled = zeta_hat * np.exp(tau_hat * points)
    g = np.sqrt(weights * scaled / (1 + scaled))
    kernel = airy_kernel(points[:, None], points[None, :])
    sign, logdet = np.linalg.slogdet(np.eye(points.size) - g[:, None] * kernel * g[None, :])
    return float(sign * np.exp(logdet))


def kpz_laplace_rhs(zeta_hat: float, tau_hat: float, tol: float = 1e-9) -> float:
    """
    E_Airy prod_z 1 / (1 + zeta_hat exp(tau_hat z)) as det(1 - D_g K_Airy D_g) on L^2(R)

    The domain is cut to [L, R]: R where the Airy kernel diagonal integrates to less than 0.1 tol, L where the trace
    bound zeta_hat E S_L drops below 0.1 tol. Panel orders are doubled until the determinant changes by less than tol.

    :param zeta_hat: Positive transform variable
    :param tau_hat: Positive rate
    :param tol: Target accuracy (default: 1e-9)
    :return: The expectation
    :raises AccuracyError: If the refinement stalls
    """
    if not zeta_hat > 0 or not tau_hat > 0:
        raise ParameterError("zeta_hat", "zeta_hat and tau_hat must be positive")

    R = 2.0
    while quad(lambda x: airy_kernel(x, x), R, np.inf)[0] > 0.1 * tol:
        R += 1.0
    L = _lower_cut(tau_hat, min(R, 0.0), 0.1 * tol / zeta_hat)

    nodes = 12
    previous = _kpz_nystrom(zeta_hat, tau_hat, L, R, nodes)
    for _ in range(3):
        nodes *= 2
        value = _kpz_nystrom(zeta_hat, tau_hat, L, R, nodes)
        if abs(value - previous) < tol:
            logger.debug("kpz determinant on [%g, %g] settled with %d nodes per panel", L, R, nodes)
            return float(np.clip(value, 0.0, 1.0))
        previous = value
    raise AccuracyError(abs(value - previous), "Nystrom refinement of the KPZ determinant stalled")


__all__ = [
    "MultiplicativeFunctional", "gap_det_discrete", "gap_det_continuous", "interval_gram", "expect_multiplicative",
    "tracy_widom_gue", "airy_statistic_moments", "kpz_laplace_rhs"
]
