"""
q-Laplace transforms of Z>=0-valued random variables and of point configurations.

Classes:
    QLaplaceParams: Base q and transform variable zeta.

Functions:
    q_pochhammer: The q-Pochhammer symbol (a; q)_n, also for n = infinity.
    q_laplace_rv: E prod_{i>=0} 1 / (1 + zeta q^(xi + i)) of a distribution on {0..K}.
    q_laplace_series: Partial sums of sum_n (-zeta)^n E q^(n xi) / (q; q)_n.
    q_laplace_config: prod_{x in X} 1 / (1 + zeta q^x) of a configuration, or its expectation over an ensemble.
    invert_q_laplace: P{xi = n} from a q-Laplace transform by a contour integral.
    q_moment: E q^(n xi) from a q-Laplace transform by a contour integral.
    distribution_from_q_laplace: Inverts all probabilities until the recovered mass is complete.
    shifted: Transform of the shifted variable S + xi.
"""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .configuration import DiscreteEnsembleSpec, PointConfiguration, input_to_configuration
from .exceptions import AccuracyError, DomainError, ParameterError
from .fredholm import MultiplicativeFunctional, expect_multiplicative
from .kernels import KernelMatrix
from .vars import CONTOUR_NODES, CONTOUR_TOL, POLE_DISTANCE, Q_PRODUCT_TOL

logger = logging.getLogger(__name__)

MAX_CONTOUR_NODES = 1 << 15  # Largest trapezoidal rule tried on a circle

QLaplaceTransform = Callable[[complex], complex]


@dataclass(frozen=True)
class QLaplaceParams:
    """
    Parameters of a q-Laplace transform

    Attributes:
        q: Base in (0, 1)
        zeta: Transform variable away from the poles -q^k, k <= 0
    """

    q: float
    zeta: complex

    def __post_init__(self) -> None:
        if not 0 < self.q < 1:
            raise ParameterError("q", f"must lie strictly inside (0, 1), got {self.q}")


def _check_poles(zeta: complex | NDArray, q: float, exponents: ArrayLike) -> None:
    distance = np.abs(1 + np.multiply.outer(zeta, q ** np.asarray(exponents, dtype=float)))
    if np.any(distance < POLE_DISTANCE):
        raise DomainError(zeta, f"zeta={zeta} is within {POLE_DISTANCE} of a pole -q^(-k)")


def q_pochhammer(a: ArrayLike, q: float, n: int | None = None) -> complex | float | NDArray:
    """
    (a; q)_n = (1 - a)(1 - aq)...(1 - aq^(n-1))

    The infinite product keeps the factors with |a q^i| >= Q_PRODUCT_TOL.

    :param a: Base point(s)
    :param q: Base in [0, 1)
    :param n: Number of factors, None for the infinite product (default: None)
    :return: The product, shaped like a and real for real a
    """
    a_arr = np.asarray(a)
    if n is not None:
        if n < 0:
            raise ParameterError("n", "must be nonnegative")
        count = n
    else:
        size = float(np.max(np.abs(a_arr))) if a_arr.size else 0.0
        if size < Q_PRODUCT_TOL:
            count = 0
        elif q == 0:
            count = 1
        else:
            count = int(np.floor(np.log(Q_PRODUCT_TOL / size) / np.log(q))) + 1
    value = np.prod(1 - a_arr[..., None] * q ** np.arange(count, dtype=float), axis=-1)
    return value.item() if value.ndim == 0 else value


def _normalized(dist: ArrayLike) -> NDArray:
    dist = np.asarray(dist, dtype=float)
    if dist.ndim != 1 or np.any(dist < 0):
        raise ParameterError("dist", "expected a nonnegative probability vector")
    if abs(dist.sum() - 1) > 1e-12:
        raise ParameterError("dist", f"probabilities sum to {dist.sum():.15g}, not 1")
    return dist


def q_laplace_rv(dist: ArrayLike, params: QLaplaceParams) -> complex | float | NDArray:
    """
    q-Laplace transform of a random variable on {0..K}, E 1 / (-zeta q^xi; q)_inf

    :param dist: Probabilities of 0..K
    :param params: Base and transform variable, zeta may be an array of points
    :return: The transform, shaped like zeta
    :raises DomainError: If zeta is too close to a pole
    """
    dist = _normalized(dist)
    q, zeta = params.q, np.asarray(params.zeta)
    support = np.flatnonzero(dist)
    _check_poles(zeta, q, np.arange(support.max() + 1 if support.size else 1))
    return sum(dist[k] / q_pochhammer(-zeta * q**k, q) for k in support)


def q_laplace_series(dist: ArrayLike, params: QLaplaceParams, n_terms: int) -> complex | float:
    """
    Partial sum of the expansion sum_{n < n_terms} (-zeta)^n E q^(n xi) / (q; q)_n, valid for |zeta| < 1

    :param dist: Probabilities of 0..K
    :param params: Base and transform variable
    :param n_terms: Number of terms
    :return: The partial sum
    """
    dist = _normalized(dist)
    q, zeta = params.q, params.zeta
    powers = q ** np.arange(dist.size, dtype=float)
    total, q_factorial = 0.0, 1.0
    for n in range(n_terms):
        if n > 0:
            q_factorial *= 1 - q**n
        total += (-zeta) ** n * float(dist @ powers**n) / q_factorial
    return total


def q_laplace_config(
    X: PointConfiguration | KernelMatrix | DiscreteEnsembleSpec | list, params: QLaplaceParams, shift: int = 0
) -> complex | float:
    """
    q-Laplace transform of a point configuration, prod_{x in X} 1 / (1 + zeta q^(x + shift))

    For a kernel matrix or an ensemble the product is averaged over the determinantal process.

    :param X: Configuration, kernel on a window, or discrete ensemble
    :param params: Base and transform variable
    :param shift: Deterministic shift of all points (default: 0)
    :return: The transform
    :raises DomainError: If zeta is too close to a pole
    """
    q, zeta = params.q, params.zeta
    if isinstance(X, (KernelMatrix, DiscreteEnsembleSpec)):
        _check_poles(zeta, q, np.arange(shift, shift + 64))
        return expect_multiplicative(X, MultiplicativeFunctional.q_laplace(zeta, q, shift))

    sites = np.asarray(input_to_configuration(X).sites, dtype=float) + shift
    _check_poles(zeta, q, sites)
    return np.prod(1 / (1 + zeta * q**sites))


def shifted(L: QLaplaceTransform, q: float, S: int) -> QLaplaceTransform:
    """
    :param L: Transform of xi
    :param q: Base
    :param S: Deterministic shift
    :return: The transform of S + xi, zeta -> L(zeta q^S)
    """
    return lambda zeta: L(zeta * q**S)


def _trapezoid_circle(integrand: Callable[[NDArray], NDArray], radius: float, what: str) -> complex:
    """
    (1 / 2 pi i) of the counter-clockwise integral over |z| = radius, doubling nodes until CONTOUR_TOL agreement
    """
    m = CONTOUR_NODES
    z = radius * np.exp(2j * np.pi * np.arange(m) / m)
    previous = np.mean(integrand(z) * z)
    while m < MAX_CONTOUR_NODES:
        # Reuses the old nodes: the doubled rule adds the midpoints
        mid = radius * np.exp(2j * np.pi * (np.arange(m) + 0.5) / m)
        value = 0.5 * (previous + np.mean(integrand(mid) * mid))
        m *= 2
        if abs(value - previous) < CONTOUR_TOL:
            logger.debug("%s settled with %d contour nodes", what, m)
            return complex(value)
        previous = value
    raise AccuracyError(abs(value - previous), f"{what} did not settle with {m} contour nodes")


def _vectorized(L: QLaplaceTransform, vectorized: bool) -> Callable[[NDArray], NDArray]:
    if vectorized:
        return lambda z: np.asarray(L(z), dtype=complex)
    return lambda z: np.array([L(complex(point)) for point in z], dtype=complex)


def invert_q_laplace(L: QLaplaceTransform, q: float, n: int, vectorized: bool = False) -> float:
    """
    P{xi = n} = (q^n / 2 pi i) of the counter-clockwise integral of (-q^(n+1) z; q)_inf L(z)

    The contour is the circle of radius (q^-n + q^-n-1) / 2, which separates the poles -q^-k with k <= n from the
    others.

    :param L: Transform of a Z>=0-valued variable, evaluated at complex points
    :param q: Base in (0, 1)
    :param n: Value
    :param vectorized: Whether L accepts an array of points (default: False)
    :return: The probability
    :raises AccuracyError: If node doubling does not settle to CONTOUR_TOL
    """
    if not 0 < q < 1:
        raise ParameterError("q", "must lie strictly inside (0, 1)")
    if n < 0:
        raise ParameterError("n", "must be nonnegative")
    radius = 0.5 * (q ** (-n) + q ** (-n - 1))
    transform = _vectorized(L, vectorized)

    def integrand(z: NDArray) -> NDArray:
        # q^n goes inside so that the node-doubling test runs on the scale of the probability
        return q**n * q_pochhammer(-(q ** (n + 1)) * z, q) * transform(z)

    return float(_trapezoid_circle(integrand, radius, f"P(xi={n})").real)


def q_moment(L: QLaplaceTransform, q: float, n: int, vectorized: bool = False) -> float:
    """
    E q^(n xi) = (-1)^n (q; q)_n (1 / 2 pi i) of the integral of L(z) z^(-n-1) over |z| = 0.5

    :param L: Transform of a Z>=0-valued variable
    :param q: Base in (0, 1)
    :param n: Order
    :param vectorized: Whether L accepts an array of points (default: False)
    :return: The q-moment
    """
    if n < 0:
        raise ParameterError("n", "must be nonnegative")
    transform = _vectorized(L, vectorized)
    value = _trapezoid_circle(lambda z: transform(z) * z ** (-n - 1), 0.5, f"E q^({n} xi)")
    return float(((-1) ** n * q_pochhammer(q, q, n) * value).real)


def distribution_from_q_laplace(
    L: QLaplaceTransform, q: float, n_max: int, mass_tol: float = 1e-6, vectorized: bool = False
) -> NDArray:
    """
    Recovers P{xi = 0}, P{xi = 1}, ... until the recovered mass reaches 1 - mass_tol

    :param L: Transform
    :param q: Base in (0, 1)
    :param n_max: Largest value inverted
    :param mass_tol: Missing mass at which the inversion stops (default: 1e-6)
    :param vectorized: Whether L accepts an array of points (default: False)
    :return: The recovered probabilities
    :raises AccuracyError: If the mass is still incomplete at n_max
    """
    probabilities = []
    for n in range(n_max + 1):
        probabilities.append(invert_q_laplace(L, q, n, vectorized))
        if sum(probabilities) >= 1 - mass_tol:
            return np.array(probabilities)
    raise AccuracyError(1 - sum(probabilities), f"recovered mass is incomplete after {n_max + 1} values")
