"""
Orthogonal polynomial families: weights, norms, three-term recurrences and difference-operator data.

Classes:
    FamilySpec: An orthogonal polynomial family together with its parameters.
    DifferenceOperatorData: Coefficients D(x,x+1), D(x,x-1) and eigenvalues mu_n of a discrete family.
    SupportTruncation: Nodes and log-weights of a discrete support, with the certified relative tail bound.

Functions:
    weight / log_weight: Weight of a family at a point of its support.
    total_mass / log_total_mass: Total mass of the weight.
    eval_poly: Polynomials of the continuous families in their standardization.
    norm_sq / log_norm_sq: Squared norms of the continuous families.
    jacobi_coefficients: Closed-form orthonormal three-term recurrences.
    orthonormal_functions: Orthonormal functions P~_x(t) W(t)^(1/2) through the closed-form recurrences.
    difference_operator: Difference-operator data of the discrete families.
    truncated_support: Support of a discrete family, truncated where the orthonormal functions up to a degree vanish.
    lanczos_basis: Orthonormal polynomials of a discrete family sampled on its (truncated) support.
    orthonormal_recurrence: Recurrence coefficients of a discrete family as a Jacobi matrix.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Tuple, TYPE_CHECKING

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln, logsumexp

from .exceptions import AccuracyError, DomainError, ParameterError
from .utils import log_pochhammer
from .vars import (
    CONTINUOUS_FAMILIES, DEFAULT_RACAH_CONST, DISCRETE_FAMILIES, FAMILIES, WEIGHT_TAIL_MAX, WEIGHT_TAIL_TOL
)

if TYPE_CHECKING:  # pragma: no cover
    from .tridiag import TridiagMatrix


@dataclass(frozen=True)
class FamilySpec:
    """
    Orthogonal polynomial family and its parameters

    Attributes:
        family: Family name
        beta: Laguerre and Meixner parameter
        a: Jacobi, Hahn and Racah parameter
        b: Jacobi, Hahn and Racah parameter
        theta: Charlier parameter
        xi: Meixner parameter
        p: Krawtchouk parameter
        M: Support end for Krawtchouk, Hahn and Racah
        const: Free constant of the Racah tuning, beta_racah = M + a + const
    """

    family: FAMILIES
    beta: float | None = None
    a: float | None = None
    b: float | None = None
    theta: float | None = None
    xi: float | None = None
    p: float | None = None
    M: int | None = None
    const: float = DEFAULT_RACAH_CONST

    def __post_init__(self) -> None:
        if self.family not in CONTINUOUS_FAMILIES + DISCRETE_FAMILIES:
            raise ParameterError("family", f"unknown family '{self.family}'")

        required = {
            "hermite": (),
            "laguerre": ("beta",),
            "jacobi": ("a", "b"),
            "charlier": ("theta",),
            "meixner": ("beta", "xi"),
            "krawtchouk": ("p", "M"),
            "hahn": ("a", "b", "M"),
            "racah": ("a", "b", "M"),
        }[self.family]
        for name in required:
            if getattr(self, name) is None:
                raise ParameterError(name, f"required by the {self.family} family")

        if self.beta is not None and not self.beta > 0:
            raise ParameterError("beta", "must be positive")
        if self.theta is not None and not self.theta > 0:
            raise ParameterError("theta", "must be positive")
        if self.xi is not None and not 0 < self.xi < 1:
            raise ParameterError("xi", "must lie strictly inside (0, 1)")
        if self.p is not None and not 0 < self.p < 1:
            raise ParameterError("p", "must lie strictly inside (0, 1)")
        for name in ("a", "b"):
            value = getattr(self, name)
            if value is not None and not value > -1:
                raise ParameterError(name, "must be greater than -1")
        if self.M is not None and (int(self.M) != self.M or self.M < 1):
            raise ParameterError("M", "must be a positive integer")
        if self.family == "racah" and not self.const > 0:
            raise ParameterError("const", "Racah admissibility requires beta > M + gamma, i.e. const > 0")

    # Named constructors

    @classmethod
    def hermite(cls) -> "FamilySpec":
        return cls("hermite")

    @classmethod
    def laguerre(cls, beta: float) -> "FamilySpec":
        return cls("laguerre", beta=beta)

    @classmethod
    def jacobi(cls, a: float, b: float) -> "FamilySpec":
        return cls("jacobi", a=a, b=b)

    @classmethod
    def charlier(cls, theta: float) -> "FamilySpec":
        return cls("charlier", theta=theta)

    @classmethod
    def meixner(cls, beta: float, xi: float) -> "FamilySpec":
        return cls("meixner", beta=beta, xi=xi)

    @classmethod
    def krawtchouk(cls, p: float, M: int) -> "FamilySpec":
        return cls("krawtchouk", p=p, M=M)

    @classmethod
    def hahn(cls, a: float, b: float, M: int) -> "FamilySpec":
        return cls("hahn", a=a, b=b, M=M)

    @classmethod
    def racah(cls, a: float, b: float, M: int, const: float = DEFAULT_RACAH_CONST) -> "FamilySpec":
        return cls("racah", a=a, b=b, M=M, const=const)

    @property
    def is_discrete(self) -> bool:
        """
        :return: Whether the family lives on a lattice
        """
        return self.family in DISCRETE_FAMILIES

    @property
    def support_size(self) -> int | None:
        """
        :return: Number of support points for finite discrete families, None otherwise
        """
        if self.family in ("krawtchouk", "hahn", "racah"):
            return int(self.M) + 1
        return None

    @property
    def interval(self) -> Tuple[float, float]:
        """
        :return: Support interval of a continuous family
        """
        return {"hermite": (-np.inf, np.inf), "laguerre": (0.0, np.inf), "jacobi": (-1.0, 1.0)}[self.family]

    @property
    def racah_parameters(self) -> Tuple[float, float, float, float]:
        """
        :return: The Racah parameters (alpha, beta, gamma, delta) with alpha + 1 = -M and beta = M + a + const
        """
        return -self.M - 1.0, self.M + self.a + self.const, self.a, self.b

    def __str__(self) -> str:
        fields = ("beta", "a", "b", "theta", "xi", "p", "M")
        params = ", ".join(f"{name}={getattr(self, name)}" for name in fields if getattr(self, name) is not None)
        if self.family == "racah":
            params += f", const={self.const}"
        return f"{self.family.capitalize()}({params})"


class SupportTruncation(NamedTuple):
    """
    Support of a discrete weight

    Attributes:
        nodes: Sites 0..X
        log_weights: Logarithm of the weight at the sites
        tail: Certified bound of the discarded mass relative to the total mass
    """

    nodes: NDArray
    log_weights: NDArray
    tail: float


# ----------------------------------------------------------------------------------------------------------------------
# WEIGHTS


def _as_sites(spec: FamilySpec, point: ArrayLike) -> NDArray:
    sites = np.asarray(point, dtype=float)
    if np.any(sites != np.round(sites)) or np.any(sites < 0):
        raise DomainError(point, f"{spec} lives on nonnegative integers")
    if spec.support_size is not None and np.any(sites > spec.M):
        raise DomainError(point, f"{spec} is supported on 0..{spec.M}")
    return sites


def _racah_log_weight(spec: FamilySpec, x: NDArray) -> NDArray:
    alpha, beta, gamma, delta = spec.racah_parameters
    terms = [
        log_pochhammer(alpha + 1, x),
        log_pochhammer(beta + delta + 1, x),
        log_pochhammer(gamma + 1, x),
        log_pochhammer((gamma + delta + 3) / 2, x),
    ]
    denominators = [
        log_pochhammer(-alpha + gamma + delta + 1, x),
        log_pochhammer(-beta + gamma + 1, x),
        log_pochhammer(delta + 1, x),
    ]
    sign = np.ones_like(x)
    log = -gammaln(x + 1)
    for s, value in terms:
        sign, log = sign * s, log + value
    for s, value in denominators:
        sign, log = sign * s, log - value

    # (gamma+delta+1)_x / ((gamma+delta+1)/2)_x without the 0/0 at gamma+delta+1 = 0
    shifted = np.clip(x - 1, 0, None)
    _, upper = log_pochhammer(gamma + delta + 2, shifted)
    _, lower = log_pochhammer((gamma + delta + 3) / 2, shifted)
    log = log + np.where(x >= 1, np.log(2.0) + upper - lower, 0.0)

    if np.any(sign <= 0):
        raise ParameterError("racah", f"weight of {spec} is not positive on its support")
    return log


def log_weight(spec: FamilySpec, point: ArrayLike) -> NDArray:
    """
    Logarithm of the weight of a family

    :param spec: Family
    :param point: Site(s) for discrete families or real point(s) for continuous families
    :return: log W at the point(s), -inf where the weight vanishes
    :raises DomainError: If a point lies outside the support
    """
    if spec.is_discrete:
        x = _as_sites(spec, point)
        match spec.family:
            case "charlier":
                return x * np.log(spec.theta) - gammaln(x + 1)
            case "meixner":
                return gammaln(spec.beta + x) - gammaln(spec.beta) - gammaln(x + 1) + x * np.log(spec.xi)
            case "krawtchouk":
                M = spec.M
                return (
                    gammaln(M + 1) - gammaln(x + 1) - gammaln(M - x + 1)
                    + x * np.log(spec.p) + (M - x) * np.log1p(-spec.p)
                )
            case "hahn":
                a, b, M = spec.a, spec.b, spec.M
                return (
                    gammaln(a + x + 1) + gammaln(b + M - x + 1) - gammaln(x + 1)
                    - gammaln(a + 1) - gammaln(M - x + 1) - gammaln(b + 1)
                )
            case _:
                return _racah_log_weight(spec, x)

    t = np.asarray(point, dtype=float)
    lo, hi = spec.interval
    if np.any(t < lo) or np.any(t > hi) or np.any(np.isnan(t)):
        raise DomainError(point, f"{spec} is supported on [{lo}, {hi}]")

    with np.errstate(divide="ignore", invalid="ignore"):
        match spec.family:
            case "hermite":
                return -t * t
            case "laguerre":
                power = np.where(t > 0, (spec.beta - 1) * np.log(np.where(t > 0, t, 1.0)), 0.0)
                if spec.beta != 1:
                    power = np.where(t > 0, power, np.inf if spec.beta < 1 else -np.inf)
                return power - t
            case _:
                left = _power_log(1.0 - t, spec.a)
                right = _power_log(1.0 + t, spec.b)
                return left + right


def _power_log(base: NDArray, exponent: float) -> NDArray:
    if exponent == 0:
        return np.zeros_like(base)
    safe = np.where(base > 0, base, 1.0)
    return np.where(base > 0, exponent * np.log(safe), np.inf if exponent < 0 else -np.inf)


def weight(spec: FamilySpec, point: ArrayLike) -> NDArray | float:
    """
    Weight of a family, computed in log-space and exponentiated on return

    :param spec: Family
    :param point: Site(s) or real point(s)
    :return: W at the point(s)
    """
    value = np.exp(log_weight(spec, point))
    return float(value) if np.ndim(value) == 0 else value


def log_total_mass(spec: FamilySpec) -> float:
    """
    Logarithm of the total mass of the weight

    :param spec: Family
    :return: log of the integral (or sum) of W over the support
    """
    match spec.family:
        case "hermite":
            return 0.5 * np.log(np.pi)
        case "laguerre":
            return float(gammaln(spec.beta))
        case "jacobi":
            a, b = spec.a, spec.b
            return float((a + b + 1) * np.log(2.0) + gammaln(a + 1) + gammaln(b + 1) - gammaln(a + b + 2))
        case "charlier":
            return float(spec.theta)
        case "meixner":
            return float(-spec.beta * np.log1p(-spec.xi))
        case "krawtchouk":
            return 0.0
        case _:
            return float(logsumexp(log_weight(spec, np.arange(spec.M + 1))))


def total_mass(spec: FamilySpec) -> float:
    """
    :param spec: Family
    :return: Total mass of the weight
    """
    return float(np.exp(log_total_mass(spec)))


# ----------------------------------------------------------------------------------------------------------------------
# CONTINUOUS FAMILIES


def _require_continuous(spec: FamilySpec) -> None:
    if spec.is_discrete:
        raise ParameterError("family", f"{spec} is not a continuous family")


def eval_poly(spec: FamilySpec, n: int, t: ArrayLike) -> NDArray | float:
    """
    Evaluates the polynomial of degree n through its three-term recurrence

    Hermite polynomials have leading coefficient 2^n, Laguerre polynomials L_n^(beta) = (-1)^n L_n^{beta-1} (classical)
    have leading coefficient 1/n!, Jacobi polynomials are the classical P_n^(a,b).

    :param spec: Continuous family
    :param n: Degree, n >= 0 (n = -1 returns 0)
    :param t: Real point(s)
    :return: The polynomial value(s)
    """
    _require_continuous(spec)
    t_arr = np.asarray(t, dtype=float)
    if n < -1:
        raise ParameterError("n", "degree must be >= -1")

    previous = np.zeros_like(t_arr)
    current = np.ones_like(t_arr)
    if n == -1:
        current = previous

    for k in range(max(n, 0)):
        match spec.family:
            case "hermite":
                following = 2.0 * t_arr * current - 2.0 * k * previous
            case "laguerre":
                beta = spec.beta
                following = ((t_arr - 2 * k - beta) * current - (k + beta - 1) * previous) / (k + 1)
            case _:
                a, b = spec.a, spec.b
                if k == 0:
                    following = ((a + b + 2) * t_arr + a - b) / 2
                else:
                    s = 2 * k + a + b
                    up = 2 * (k + 1) * (k + a + b + 1) / ((s + 1) * (s + 2))
                    mid = (b * b - a * a) / (s * (s + 2))
                    down = 2 * (k + a) * (k + b) / (s * (s + 1))
                    following = ((t_arr - mid) * current - down * previous) / up
        previous, current = current, following

    return float(current) if current.ndim == 0 else current


def log_norm_sq(spec: FamilySpec, n: int) -> float:
    """
    Logarithm of the squared norm of the polynomial of degree n

    :param spec: Continuous family
    :param n: Degree
    :return: log ||P_n||^2
    """
    _require_continuous(spec)
    if n < 0:
        raise ParameterError("n", "degree must be nonnegative")

    match spec.family:
        case "hermite":
            return float(0.5 * np.log(np.pi) + n * np.log(2.0) + gammaln(n + 1))
        case "laguerre":
            return float(gammaln(n + spec.beta) - gammaln(n + 1))
        case _:
            if n == 0:
                return log_total_mass(spec)
            a, b = spec.a, spec.b
            return float(
                (a + b + 1) * np.log(2.0) + gammaln(n + a + 1) + gammaln(n + b + 1)
                - np.log(2 * n + a + b + 1) - gammaln(n + a + b + 1) - gammaln(n + 1)
            )


def norm_sq(spec: FamilySpec, n: int) -> float:
    """
    Squared norm of the polynomial of degree n, through log-gamma

    :param spec: Continuous family
    :param n: Degree
    :return: ||P_n||^2
    """
    return float(np.exp(log_norm_sq(spec, n)))


def jacobi_coefficients(spec: FamilySpec, n: int) -> Tuple[NDArray, NDArray]:
    """
    Coefficients of t P~_x = a_x P~_{x+1} + b_x P~_x + a_{x-1} P~_{x-1} for the orthonormal polynomials

    :param spec: Continuous family, Charlier, Meixner or Krawtchouk
    :param n: Number of coefficients
    :return: Arrays (b_0..b_{n-1}) and (a_0..a_{n-1})
    :raises ParameterError: For Hahn and Racah, whose recurrences come from orthonormal_recurrence
    """
    x = np.arange(n, dtype=float)

    match spec.family:
        case "hermite":
            return np.zeros(n), np.sqrt((x + 1) / 2)
        case "laguerre":
            beta = spec.beta
            return 2 * x + beta, np.sqrt((x + 1) * (x + beta))
        case "jacobi":
            a, b = spec.a, spec.b
            s = 2 * x + a + b
            with np.errstate(divide="ignore", invalid="ignore"):
                diag = (b * b - a * a) / (s * (s + 2))
                off = 2 / (s + 2) * np.sqrt((x + 1) * (x + a + 1) * (x + b + 1) * (x + a + b + 1) / ((s + 1) * (s + 3)))
            if n > 0:
                diag[0] = (b - a) / (a + b + 2)
                off[0] = 2 / (a + b + 2) * np.sqrt((a + 1) * (b + 1) / (a + b + 3))
            return diag, off
        case "charlier":
            theta = spec.theta
            return x + theta, np.sqrt((x + 1) * theta)
        case "meixner":
            beta, xi = spec.beta, spec.xi
            return (x + (x + beta) * xi) / (1 - xi), np.sqrt((x + 1) * (x + beta) * xi) / (1 - xi)
        case "krawtchouk":
            p, M = spec.p, spec.M
            if n > M + 1:
                raise ParameterError("n", f"{spec} has {M + 1} orthogonal polynomials")
            return p * (M - x) + x * (1 - p), np.sqrt((x + 1) * np.clip(M - x, 0, None) * p * (1 - p))
    raise ParameterError("family", f"{spec} has no closed-form recurrence, use orthonormal_recurrence")


def orthonormal_functions(spec: FamilySpec, n_max: int, t: ArrayLike) -> NDArray:
    """
    Orthonormal functions P~_x(t) W(t)^(1/2) for x = 0..n_max

    The recurrence is run on rescaled values so that neither large degrees nor extreme weights overflow.

    :param spec: Continuous family, Charlier, Meixner or Krawtchouk
    :param n_max: Largest degree
    :param t: Real points inside the support, or sites for the discrete families
    :return: Array of shape (n_max + 1, len(t))
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    diag, off = jacobi_coefficients(spec, n_max + 1)
    log_start = 0.5 * (log_weight(spec, t_arr) - log_total_mass(spec))

    values = np.empty((n_max + 1, t_arr.size))
    exponents = np.zeros((n_max + 1, t_arr.size))
    previous = np.zeros_like(t_arr)
    current = np.ones_like(t_arr)
    exponent = np.zeros_like(t_arr)
    values[0] = current

    for x in range(n_max):
        lower = off[x - 1] * previous if x > 0 else 0.0
        previous, current = current, ((t_arr - diag[x]) * current - lower) / off[x]
        large = np.abs(current) > 1e150
        if np.any(large):
            current[large] *= 1e-150
            previous[large] *= 1e-150
            exponent[large] += 150 * np.log(10.0)
        values[x + 1] = current
        exponents[x + 1] = exponent

    with np.errstate(over="ignore", invalid="ignore"):
        scale = np.exp(exponents + log_start)
        result = values * scale
    return np.where(np.isfinite(scale), result, 0.0)


# ----------------------------------------------------------------------------------------------------------------------
# DISCRETE FAMILIES


@dataclass(frozen=True)
class DifferenceOperatorData:
    """
    Coefficients of the difference operator D with D P_n = -mu_n P_n

    Attributes:
        spec: Discrete family
    """

    spec: FamilySpec

    @property
    def support_size(self) -> int | None:
        """
        :return: M + 1 for finite supports, None for Z>=0
        """
        return self.spec.support_size

    def up(self, x: ArrayLike) -> NDArray:
        """
        :param x: Site(s)
        :return: D(x, x+1)
        """
        x = np.asarray(x, dtype=float)
        s = self.spec
        match s.family:
            case "charlier":
                return np.full_like(x, s.theta)
            case "meixner":
                return s.xi * (x + s.beta)
            case "krawtchouk":
                return s.p * (s.M - x)
            case "hahn":
                return (s.M - x) * (x + s.a + 1)
            case _:
                _, beta, gamma, delta = s.racah_parameters
                with np.errstate(divide="ignore", invalid="ignore"):
                    ratio = np.where(x == 0, 1.0, (x + gamma + delta + 1) / (2 * x + gamma + delta + 1))
                return (s.M - x) * (x + beta + delta + 1) * (x + gamma + 1) * ratio / (2 * x + gamma + delta + 2)

    def down(self, x: ArrayLike) -> NDArray:
        """
        :param x: Site(s)
        :return: D(x, x-1), zero at x = 0
        """
        x = np.asarray(x, dtype=float)
        s = self.spec
        match s.family:
            case "charlier" | "meixner":
                return x.copy()
            case "krawtchouk":
                return (1 - s.p) * x
            case "hahn":
                return x * (s.M + s.b + 1 - x)
            case _:
                _, beta, gamma, delta = s.racah_parameters
                safe = np.where(x == 0, 1.0, x)
                value = (
                    safe * (safe + s.M + gamma + delta + 1) * (beta - gamma - safe) * (safe + delta)
                    / ((2 * safe + gamma + delta) * (2 * safe + gamma + delta + 1))
                )
                return np.where(x == 0, 0.0, value)

    def mu(self, n: ArrayLike) -> NDArray:
        """
        :param n: Degree(s)
        :return: Eigenvalue(s) mu_n, with mu_0 = 0
        """
        n = np.asarray(n, dtype=float)
        s = self.spec
        match s.family:
            case "charlier" | "krawtchouk":
                return n.copy()
            case "meixner":
                return (1 - s.xi) * n
            case "hahn":
                return n * (n + s.a + s.b + 1)
            case _:
                _, beta, _, _ = s.racah_parameters
                return n * (n + beta - s.M)


def difference_operator(spec: FamilySpec) -> DifferenceOperatorData:
    """
    Difference-operator data of a discrete family

    :param spec: Discrete family
    :return: The coefficient maps
    """
    if not spec.is_discrete:
        raise ParameterError("family", f"{spec} is not a discrete family")
    return DifferenceOperatorData(spec)


def _tail_ratio(spec: FamilySpec, X: int) -> float:
    """
    Upper bound of W(x+1)/W(x) for every x > X
    """
    if spec.family == "charlier":
        return spec.theta / (X + 2)
    return max(spec.xi, spec.xi * (X + 1 + spec.beta) / (X + 2))


def _largest_zero_bound(spec: FamilySpec, degree: int) -> float:
    # Gershgorin bound of the Jacobi matrix whose eigenvalues are the zeros of P_0..P_{degree+1}
    diag, off = jacobi_coefficients(spec, degree + 1)
    radius = diag.copy()
    radius[1:] += off[:-1]
    return float(np.max(radius + off))


@lru_cache(maxsize=32)
def truncated_support(spec: FamilySpec, degree: int = 0, rel_tol: float = WEIGHT_TAIL_TOL) -> SupportTruncation:
    """
    Support of a discrete family, truncated for Charlier and Meixner where the mass of every orthonormal function
    P~_n W^(1/2) with n <= degree left beyond the cut is certified below rel_tol

    Beyond the largest zero z of P_n, P_n(x+1)^2 / P_n(x)^2 <= ((x+1-z)/(x-z))^(2n), so the squared functions decay
    at least geometrically with the ratio of the weight times that factor. Degree 0 is the weight itself.

    :param spec: Discrete family
    :param degree: Largest degree whose orthonormal function must fit (default: 0)
    :param rel_tol: Residual mass of each function, relative to its unit norm (default: WEIGHT_TAIL_TOL)
    :return: Nodes, log-weights and the certified relative tail bound
    """
    if not spec.is_discrete:
        raise ParameterError("family", f"{spec} is not a discrete family")
    if degree < 0:
        raise ParameterError("degree", "must be nonnegative")
    if spec.support_size is not None:
        nodes = np.arange(spec.support_size)
        return SupportTruncation(nodes, log_weight(spec, nodes), 0.0)

    zero = _largest_zero_bound(spec, degree)
    scale = max(zero, spec.theta if spec.family == "charlier" else spec.beta * spec.xi / (1 - spec.xi) + spec.beta)
    X = int(np.ceil(scale + 10 * np.sqrt(scale + 1) + 20))
    while X < 10**7:
        ratio = _tail_ratio(spec, X) * ((X + 2 - zero) / (X + 1 - zero)) ** (2 * degree)
        if ratio < 1:
            head = float(np.max(orthonormal_functions(spec, degree, [X + 1])[:, 0] ** 2))
            tail = head / (1 - ratio)
            if tail < rel_tol:
                nodes = np.arange(X + 1)
                return SupportTruncation(nodes, log_weight(spec, nodes), float(tail))
        X = int(1.25 * X) + 10

    raise AccuracyError(message=f"could not truncate the support of {spec} for degree {degree}")


@lru_cache(maxsize=32)
def lanczos_basis(spec: FamilySpec, n_max: int) -> Tuple[NDArray, NDArray, NDArray, NDArray]:
    """
    Lanczos (discrete Stieltjes) orthonormalization on the support of a discrete family

    Row n of the returned basis holds p_n(x) W(x)^(1/2) for the orthonormal polynomial p_n.

    :param spec: Discrete family
    :param n_max: Largest degree
    :return: Recurrence diagonal (n_max + 1), off-diagonal (n_max), basis (n_max + 1, support) and the nodes
    :raises AccuracyError: If the truncated tail is larger than WEIGHT_TAIL_MAX
    """
    nodes, log_w, tail = truncated_support(spec, n_max)
    if tail > WEIGHT_TAIL_MAX:
        raise AccuracyError(tail, f"support truncation of {spec} leaves too much mass")
    if n_max + 1 > nodes.size:
        raise ParameterError("n_max", f"{spec} supports at most {nodes.size} orthogonal polynomials")

    start = np.exp(0.5 * (log_w - log_w.max()))
    basis = np.zeros((n_max + 1, nodes.size))
    basis[0] = start / np.linalg.norm(start)
    diag = np.zeros(n_max + 1)
    off = np.zeros(n_max)
    x = nodes.astype(float)

    for k in range(n_max + 1):
        vector = x * basis[k]
        diag[k] = basis[k] @ vector
        if k == n_max:
            break
        vector -= diag[k] * basis[k]
        if k > 0:
            vector -= off[k - 1] * basis[k - 1]
        for _ in range(2):
            vector -= basis[: k + 1].T @ (basis[: k + 1] @ vector)
        off[k] = np.linalg.norm(vector)
        basis[k + 1] = vector / off[k]

    return diag, off, basis, nodes


def orthonormal_recurrence(spec: FamilySpec, n_max: int) -> "TridiagMatrix":
    """
    Recurrence coefficients of the orthonormal polynomials of a discrete family

    :param spec: Discrete family
    :param n_max: Largest degree
    :return: Finite Jacobi matrix of size n_max + 1
    """
    from .tridiag import TridiagMatrix

    diag, off, _, _ = lanczos_basis(spec, n_max)
    return TridiagMatrix.finite(diag, off)
