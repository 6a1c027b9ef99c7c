"""
Correlation kernels: discrete Hermite/Laguerre/Jacobi kernels, Christoffel-Darboux kernels and the Airy kernel.

Classes:
    KernelMatrix: Immutable symmetric kernel on a window {0..Z}.

Functions:
    interval_gram: Gram matrix of the orthonormal functions over a sub-interval of the support.
    kernel_matrix: Discrete ensemble kernel on {0..Z} from a single Gram computation.
    discrete_kernel_quadrature: One entry of a discrete ensemble kernel (quadrature form).
    discrete_kernel_integrable: One off-diagonal entry of a discrete ensemble kernel (closed integrable form).
    cd_kernel: Christoffel-Darboux kernel of a discrete family (spectral projection) or a continuous family.
    cd_kernel_matrix: Christoffel-Darboux kernel of a discrete family on {0..Z}.
    cd_kernel_direct: Christoffel-Darboux kernel of a discrete family by direct summation.
    airy_function: Ai and Ai'.
    airy_kernel: The Airy kernel.
    complement_kernel: Particle/hole involution K -> 1 - K.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import airy, gammaincc, gammaln

from .configuration import DiscreteEnsembleSpec
from .exceptions import AccuracyError, DomainError, ParameterError
from .orthopoly import FamilySpec, eval_poly, lanczos_basis, log_norm_sq, orthonormal_functions
from .tridiag import prelimit_kernel_block
from .utils import panel_rule
from .vars import GAUSS_NODES, QUADRATURE_TOL, TAIL_TOL

logger = logging.getLogger(__name__)

MAX_REFINEMENTS = 40  # Bisection depth of the adaptive Gram quadrature


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """
    Symmetric kernel restricted to a window {0..Z}

    Attributes:
        entries: Read-only (Z+1) x (Z+1) array
    """

    entries: NDArray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ParameterError("entries", "a kernel matrix must be square")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def window(self) -> range:
        """
        :return: The sites 0..Z
        """
        return range(self.entries.shape[0])

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index: Tuple[int, int]) -> float:
        return float(self.entries[index])

    def block(self, Z: int) -> "KernelMatrix":
        """
        :param Z: Last site kept
        :return: The kernel restricted to {0..Z}
        """
        if not 0 <= Z < self.size:
            raise ParameterError("Z", f"window ends at {self.size - 1}")
        return KernelMatrix(self.entries[: Z + 1, : Z + 1])

    def gauge(self) -> "KernelMatrix":
        """
        :return: The conjugated kernel (-1)^(x+y) K(x, y), which has the same correlation functions
        """
        signs = np.where(np.arange(self.size) % 2 == 0, 1.0, -1.0)
        return KernelMatrix(signs[:, None] * self.entries * signs[None, :])

    def minor(self, sites: ArrayLike) -> float:
        """
        :param sites: Distinct sites of the window
        :return: det[K(x_i, x_j)], the correlation function at the sites
        """
        idx = np.asarray(sites, dtype=int)
        if idx.size == 0:
            return 1.0
        return float(np.linalg.det(self.entries[np.ix_(idx, idx)]))


def complement_kernel(K: KernelMatrix) -> KernelMatrix:
    """
    Particle/hole involution on the window

    :param K: Kernel
    :return: The kernel 1 - K
    """
    return KernelMatrix(np.eye(K.size) - K.entries)


# ----------------------------------------------------------------------------------------------------------------------
# GRAM MATRICES


def _end_exponents(family: FamilySpec, lo: float, hi: float) -> Tuple[float, float]:
    """
    Algebraic exponents of the weight at the ends of [lo, hi] that touch a singular end of the support
    """

    def singular(exponent: float) -> float:
        if exponent == 0 or (float(exponent).is_integer() and exponent > 0):
            return 0.0
        return float(exponent)

    match family.family:
        case "laguerre":
            if lo == 0.0 and family.beta < 20:
                return singular(family.beta - 1), 0.0
            return 0.0, 0.0
        case "jacobi":
            return (singular(family.b) if lo == -1.0 else 0.0), (singular(family.a) if hi == 1.0 else 0.0)
    return 0.0, 0.0


def _panel(family: FamilySpec, n_max: int, lo: float, hi: float, alpha_lo: float, alpha_hi: float) -> NDArray:
    nodes, weights = panel_rule(lo, hi, GAUSS_NODES, alpha_lo, alpha_hi)
    values = orthonormal_functions(family, n_max, nodes)
    return (values * weights) @ values.T


def _adaptive_gram(family: FamilySpec, lo: float, hi: float, n_max: int, tol: float) -> NDArray:
    """
    Adaptive panel quadrature of the Gram matrix, bisecting every panel whose two halves disagree with it
    """
    alpha_lo, alpha_hi = _end_exponents(family, lo, hi)
    match family.family:
        case "hermite":
            width = 0.5
        case "laguerre":
            width = max(0.5, np.sqrt(family.beta + n_max) / 4)
        case _:
            width = 2.0 / (n_max + 8)
    count = max(4, int(np.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, count + 1)
    active: List[Tuple[float, float, float, float, NDArray]] = []
    for k in range(count):
        a_lo = alpha_lo if k == 0 else 0.0
        a_hi = alpha_hi if k == count - 1 else 0.0
        active.append((edges[k], edges[k + 1], a_lo, a_hi, _panel(family, n_max, edges[k], edges[k + 1], a_lo, a_hi)))

    total = np.zeros((n_max + 1, n_max + 1))
    panels = 0
    for _ in range(MAX_REFINEMENTS):
        refined = []
        for a, b, a_lo, a_hi, parent in active:
            mid = 0.5 * (a + b)
            left = _panel(family, n_max, a, mid, a_lo, 0.0)
            right = _panel(family, n_max, mid, b, 0.0, a_hi)
            children = left + right
            if np.max(np.abs(children - parent)) <= tol:
                total += children
                panels += 2
            else:
                refined.append((a, mid, a_lo, 0.0, left))
                refined.append((mid, b, 0.0, a_hi, right))
        active = refined
        if not active:
            logger.debug("gram on [%g, %g] of %s used %d panels", lo, hi, family, panels)
            return total

    worst = max(float(np.max(np.abs(entry[4]))) for entry in active)
    raise AccuracyError(worst, f"panel refinement stalled on [{lo}, {hi}] for {family}")


def _hermite_tail(n_max: int, T: float) -> float:
    """
    Bound of |int_T^inf phi_x phi_y| for x, y <= n_max, from |H_n(t)| <= (2t)^n exp(n^2 / (4t^2))
    """
    m = 2 * n_max
    a = (m + 1) / 2
    log_q = np.log(max(gammaincc(a, T * T), 1e-300))
    log_bound = (
        m * np.log(2.0) + 2 * n_max**2 / (4 * T * T) + np.log(0.5) + gammaln(a) + log_q
        - log_norm_sq(FamilySpec.hermite(), n_max)
    )
    return float(np.exp(log_bound))


def _laguerre_tail(family: FamilySpec, n_max: int, T: float) -> float:
    """
    Bound of |int_T^inf phi_x phi_y| for x, y <= n_max, from |L_n(t)| <= (t + n + |beta - 1|)^n / n!
    """
    beta = family.beta
    m = 2 * n_max
    log_q = np.log(max(gammaincc(m + beta, T), 1e-300))
    log_bound = (
        m * np.log(2.0) + gammaln(m + beta) + log_q - 2 * gammaln(n_max + 1) - log_norm_sq(family, n_max)
    )
    return float(np.exp(log_bound))


def _tail_cut(family: FamilySpec, n_max: int, start: float) -> float:
    """
    Finite replacement T for an infinite end, with certified tail below TAIL_TOL
    """
    if family.family == "hermite":
        T = max(abs(start) + 1.0, np.sqrt(2 * n_max + 60))
        while _hermite_tail(n_max, T) > TAIL_TOL:
            T *= 1.25
        return T

    offset = n_max + abs(family.beta - 1)
    T = max(start + 1.0, 2 * offset + 50.0)
    while _laguerre_tail(family, n_max, T) > TAIL_TOL:
        T *= 1.25
    return T


@lru_cache(maxsize=128)
def interval_gram(family: FamilySpec, lo: float, hi: float, n_max: int, tol: float = QUADRATURE_TOL) -> NDArray:
    """
    Gram matrix G(x, y) = int_lo^hi P~_x(t) P~_y(t) W(t) dt for x, y <= n_max

    Infinite ends are cut where the certified tail is below TAIL_TOL; ends at a singular end of the support use
    Gauss-Jacobi panels.

    :param family: Continuous family
    :param lo: Left end (may be -inf for Hermite)
    :param hi: Right end (may be +inf for Hermite and Laguerre)
    :param n_max: Largest degree
    :param tol: Absolute tolerance per panel (default: QUADRATURE_TOL)
    :return: Symmetric (n_max + 1) x (n_max + 1) array (read-only)
    :raises AccuracyError: If the refinement stalls
    """
    if family.is_discrete:
        raise ParameterError("family", f"{family} is not a continuous family")
    s_lo, s_hi = family.interval
    if lo < s_lo or hi > s_hi or lo > hi:
        raise DomainError((lo, hi), f"interval is not inside the support of {family}")
    if lo == hi:
        gram = np.zeros((n_max + 1, n_max + 1))
        gram.setflags(write=False)
        return gram

    if np.isinf(lo):
        lo = -_tail_cut(family, n_max, hi if np.isfinite(hi) else 0.0)
    if np.isinf(hi):
        hi = _tail_cut(family, n_max, lo)

    gram = _adaptive_gram(family, float(lo), float(hi), n_max, tol)
    gram = 0.5 * (gram + gram.T)
    gram.setflags(write=False)
    return gram


# ----------------------------------------------------------------------------------------------------------------------
# DISCRETE ENSEMBLE KERNELS


def kernel_matrix(spec: DiscreteEnsembleSpec, Z: int) -> KernelMatrix:
    """
    Kernel of a discrete ensemble on {0..Z}

    The bounded side (-inf, rho] is integrated and the other side follows from orthonormality, K+ = 1 - K-.

    :param spec: Discrete ensemble
    :param Z: Last site of the window
    :return: The kernel
    """
    if Z < 0:
        raise ParameterError("Z", "window end must be nonnegative")
    family = spec.family
    minus = interval_gram(family, family.interval[0], spec.rho, Z)
    entries = np.eye(Z + 1) - minus if spec.is_plus else minus
    return KernelMatrix(entries)


def discrete_kernel_quadrature(spec: DiscreteEnsembleSpec, x: int, y: int) -> float:
    """
    Entry of a discrete ensemble kernel through the Gram matrix of the orthonormal functions

    :param spec: Discrete ensemble
    :param x: Site
    :param y: Site
    :return: K(x, y)
    """
    if x < 0 or y < 0:
        raise DomainError((x, y), "discrete ensembles live on Z>=0")
    return kernel_matrix(spec, max(x, y))[x, y]


def discrete_kernel_integrable(spec: DiscreteEnsembleSpec, x: int, y: int) -> float:
    """
    Off-diagonal entry of a discrete ensemble kernel through its closed integrable form

    :param spec: Discrete ensemble
    :param x: Site
    :param y: Site, different from x
    :return: K(x, y)
    :raises DomainError: On the diagonal, where the form is undefined
    """
    if x == y:
        raise DomainError((x, y), "the integrable form is undefined on the diagonal")
    if x < 0 or y < 0:
        raise DomainError((x, y), "discrete ensembles live on Z>=0")

    rho, family = spec.rho, spec.family
    sign = 1.0 if spec.is_plus else -1.0
    match spec.base:
        case "DH":
            log_pref = -0.5 * (np.log(np.pi) + gammaln(x + 1) + gammaln(y + 1) + (x + y + 2) * np.log(2.0)) - rho * rho
            numerator = eval_poly(family, x + 1, rho) * eval_poly(family, y, rho)
            numerator -= eval_poly(family, x, rho) * eval_poly(family, y + 1, rho)
            return float(-sign * np.exp(log_pref) * numerator / (x - y))
        case "DL":
            beta = spec.beta
            shifted = FamilySpec.laguerre(beta + 1)
            if rho == 0:
                return 0.0
            log_pref = (
                0.5 * (gammaln(x + 1) + gammaln(y + 1) - gammaln(x + beta) - gammaln(y + beta))
                + beta * np.log(rho) - rho
            )
            numerator = eval_poly(shifted, x - 1, rho) * eval_poly(family, y, rho)
            numerator -= eval_poly(family, x, rho) * eval_poly(shifted, y - 1, rho)
            return float(sign * np.exp(log_pref) * numerator / (x - y))
        case _:
            a, b = spec.a, spec.b
            if rho == -1:
                return 0.0
            shifted = FamilySpec.jacobi(a + 1, b + 1)
            log_pref = (
                (a + 1) * np.log1p(-rho) + (b + 1) * np.log1p(rho) - np.log(2.0)
                - 0.5 * (log_norm_sq(family, x) + log_norm_sq(family, y))
            )
            numerator = (x + a + b + 1) * eval_poly(shifted, x - 1, rho) * eval_poly(family, y, rho)
            numerator -= eval_poly(family, x, rho) * (y + a + b + 1) * eval_poly(shifted, y - 1, rho)
            grid = x * (x + a + b + 1) - y * (y + a + b + 1)
            return float(sign * np.exp(log_pref) * numerator / grid)


# ----------------------------------------------------------------------------------------------------------------------
# CHRISTOFFEL-DARBOUX KERNELS


def cd_kernel_matrix(spec: FamilySpec, N: int, Z: int) -> KernelMatrix:
    """
    Christoffel-Darboux kernel of a discrete family on {0..Z}, computed as the projection [A_N]_+

    :param spec: Discrete family
    :param N: Number of particles
    :param Z: Last site of the window
    :return: The kernel
    """
    return KernelMatrix(prelimit_kernel_block(spec, N, Z + 1))


def cd_kernel(spec: FamilySpec, N: int, x: float, y: float) -> float:
    """
    Rank-N Christoffel-Darboux kernel (W(x) W(y))^(1/2) sum_{n<N} P~_n(x) P~_n(y)

    Discrete families go through the spectral projection of the pre-limit Jacobi matrix, continuous families are
    summed directly at real points.

    :param spec: Family
    :param N: Number of particles
    :param x: Site or real point
    :param y: Site or real point
    :return: K_N(x, y)
    """
    if spec.is_discrete:
        return cd_kernel_matrix(spec, N, int(max(x, y)))[int(x), int(y)]
    values = orthonormal_functions(spec, N - 1, np.array([x, y], dtype=float))
    return float(values[:, 0] @ values[:, 1])


def cd_kernel_direct(spec: FamilySpec, N: int, x: int, y: int) -> float:
    """
    Christoffel-Darboux kernel of a discrete family by direct summation of the Lanczos orthonormal polynomials

    :param spec: Discrete family
    :param N: Number of particles
    :param x: Site
    :param y: Site
    :return: K_N(x, y), 0 beyond the certified truncation of an infinite support
    """
    size = spec.support_size
    if size is not None and (x > size - 1 or y > size - 1):
        raise DomainError((x, y), f"{spec} is supported on 0..{size - 1}")
    _, _, basis, nodes = lanczos_basis(spec, N - 1)
    if x >= nodes.size or y >= nodes.size:
        return 0.0
    return float(basis[:N, x] @ basis[:N, y])


# ----------------------------------------------------------------------------------------------------------------------
# AIRY


def airy_function(x: ArrayLike) -> Tuple[NDArray, NDArray]:
    """
    :param x: Real point(s)
    :return: Ai(x) and Ai'(x)
    """
    ai, aip, _, _ = airy(np.asarray(x, dtype=float))
    return ai, aip


def airy_kernel(x: ArrayLike, y: ArrayLike) -> NDArray | float:
    """
    Airy kernel (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y), with the diagonal Ai'(x)^2 - x Ai(x)^2

    Points closer than 1e-6 use the diagonal value at their midpoint.

    :param x: Real point(s)
    :param y: Real point(s), broadcast against x
    :return: K_Airy(x, y)
    """
    x_arr, y_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ai_x, aip_x = airy_function(x_arr)
    ai_y, aip_y = airy_function(y_arr)
    mid = 0.5 * (x_arr + y_arr)
    ai_m, aip_m = airy_function(mid)

    close = np.abs(x_arr - y_arr) < 1e-6
    gap = np.where(close, 1.0, x_arr - y_arr)
    value = np.where(close, aip_m**2 - mid * ai_m**2, (ai_x * aip_y - aip_x * ai_y) / gap)
    return float(value) if value.ndim == 0 else value
