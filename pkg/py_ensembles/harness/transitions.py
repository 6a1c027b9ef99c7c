from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np
from numpy.typing import NDArray

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.exceptions import ParameterError
from py_ensembles.kernels import kernel_matrix
from py_ensembles.orthopoly import FamilySpec
from py_ensembles.tridiag import TridiagMatrix, build_limit_jacobi, build_prelimit_jacobi, prelimit_kernel_block

Tuning = Callable[[int, Dict[str, float]], Tuple[FamilySpec, float]]


def _charlier_dh(N: int, p: Dict[str, float]) -> Tuple[FamilySpec, float]:
    theta = N + np.sqrt(2 * N) * p["rho"]
    return FamilySpec.charlier(theta), float(np.sqrt(2 * N))


def _meixner_dl(N: int, p: Dict[str, float]) -> Tuple[FamilySpec, float]:
    if not p["rho"] < N:
        raise ParameterError("N", f"xi = 1 - rho/N needs N > rho = {p['rho']}")
    return FamilySpec.meixner(p["beta"], 1 - p["rho"] / N), 1.0


def _meixner_dh(N: int, p: Dict[str, float]) -> Tuple[FamilySpec, float]:
    rho, xi = p["rho"], p["xi"]
    # s = sqrt(xi beta) solves s^2 - sqrt(2) rho s - (1 - xi) N = 0
    s = 0.5 * (np.sqrt(2) * rho + np.sqrt(2 * rho * rho + 4 * (1 - xi) * N))
    return FamilySpec.meixner(s * s / xi, xi), float(np.sqrt(2) * s)


def _krawtchouk_dh(N: int, p: Dict[str, float]) -> Tuple[FamilySpec, float]:
    rho = p["rho"]
    # s = sqrt(pM) solves s^2 - sqrt(2) rho s - N = 0; p -> 0 needs M >> N
    s = 0.5 * (np.sqrt(2) * rho + np.sqrt(2 * rho * rho + 4 * N))
    M = max(int(round(N**1.5)), int(np.ceil(2 * s * s)), N + 1)
    return FamilySpec.krawtchouk(s * s / M, M), float(np.sqrt(2) * s)


def _hahn_dl(N: int, p: Dict[str, float]) -> Tuple[FamilySpec, float]:
    M = max(int(round(N * N / p["rho"])), N)
    return FamilySpec.hahn(p["a"], p["b"], M), float(M)


def _racah_dj(N: int, p: Dict[str, float]) -> Tuple[FamilySpec, float]:
    M = max(int(round(N / np.sqrt((1 - p["rho"]) / 2))), N)
    return FamilySpec.racah(p["a"], p["b"], M, p.get("const", 1.0)), M * M / 2


@dataclass(frozen=True)
class LimitTransition:
    """
    Large-parameter limit of a pre-limit Jacobi matrix towards the Jacobi matrix of a discrete ensemble

    Attributes:
        name: Registry key
        target: Map from the parameters to the limit ensemble
        tuning: Map (N, parameters) -> (pre-limit family, c_N); None for the DL -> DH transition, whose pre-limit
            object is the DL ensemble with beta = N
        expected_order: Rate N^(-order) of the Jacobi-entry error
        defaults: Default parameters
        final_tolerance: Bound of the kernel error at the largest N, None when only the trend is checked
        default_grid: Particle numbers scanned when none are given
        final_window: Last site of the block bounded by final_tolerance, None for the whole compared window
    """

    name: str
    target: Callable[[Dict[str, float]], DiscreteEnsembleSpec]
    tuning: Tuning | None
    expected_order: float
    defaults: Dict[str, float] = field(default_factory=dict)
    final_tolerance: float | None = None
    default_grid: Tuple[int, ...] = (50, 100, 200, 400)
    final_window: int | None = None

    def parameters(self, **overrides: float) -> Dict[str, float]:
        unknown = set(overrides) - set(self.defaults)
        if unknown:
            raise ParameterError(sorted(unknown)[0], f"not a parameter of the {self.name} transition")
        return {**self.defaults, **{key: float(value) for key, value in overrides.items()}}

    def __dl_source(self, N: int, params: Dict[str, float]) -> Tuple[DiscreteEnsembleSpec, float]:
        beta, c = float(N), float(np.sqrt(2 * N))
        return DiscreteEnsembleSpec.dl(beta + c * params["rho"], beta, self.target(params).sign), c

    def prelimit_matrix(self, N: int, params: Dict[str, float]) -> TridiagMatrix:
        """
        :param N: Number of particles (beta for DL -> DH)
        :param params: Transition parameters
        :return: The normalized pre-limit Jacobi matrix A_N
        """
        if self.tuning is None:
            source, c = self.__dl_source(N, params)
            return build_limit_jacobi(source).scaled(1 / c)
        family, c_N = self.tuning(N, params)
        return build_prelimit_jacobi(family, N, c_N)

    def prelimit_kernel(self, N: int, window: int, params: Dict[str, float]) -> NDArray:
        """
        :param N: Number of particles (beta for DL -> DH)
        :param window: Number of sites
        :param params: Transition parameters
        :return: The pre-limit kernel on {0..window-1}, in the gauge of its Jacobi matrix
        """
        if self.tuning is None:
            source, _ = self.__dl_source(N, params)
            return np.array(kernel_matrix(source, window - 1).entries)
        family, c_N = self.tuning(N, params)
        return prelimit_kernel_block(family, N, window, c_N)

    def limit_kernel(self, window: int, params: Dict[str, float]) -> NDArray:
        """
        :param window: Number of sites
        :param params: Transition parameters
        :return: The target kernel on {0..window-1}, gauged like build_limit_jacobi for minus targets
        """
        target = self.target(params)
        K = kernel_matrix(target, window - 1)
        if self.tuning is not None and not target.is_plus:
            K = K.gauge()
        return np.array(K.entries)


LIMIT_TRANSITIONS: Dict[str, LimitTransition] = {
    "charlier-dh": LimitTransition(
        "charlier-dh", lambda p: DiscreteEnsembleSpec.dh(p["rho"]), _charlier_dh, 0.5, {"rho": 0.5}
    ),
    "meixner-dl": LimitTransition(
        "meixner-dl", lambda p: DiscreteEnsembleSpec.dl(p["rho"], p["beta"], "-"), _meixner_dl, 1.0,
        {"rho": 2.0, "beta": 1.5}, final_tolerance=0.01,
    ),
    "meixner-dh": LimitTransition(
        "meixner-dh", lambda p: DiscreteEnsembleSpec.dh(p["rho"]), _meixner_dh, 0.5, {"rho": 0.5, "xi": 0.5}
    ),
    "krawtchouk-dh": LimitTransition(
        "krawtchouk-dh", lambda p: DiscreteEnsembleSpec.dh(p["rho"]), _krawtchouk_dh, 0.5, {"rho": 0.5}
    ),
    "hahn-dl": LimitTransition(
        "hahn-dl", lambda p: DiscreteEnsembleSpec.dl(p["rho"], p["a"] + 1, "-"), _hahn_dl, 1.0,
        {"rho": 4.0, "a": 0.5, "b": 0.5},
    ),
    "racah-dj": LimitTransition(
        "racah-dj", lambda p: DiscreteEnsembleSpec.dj(p["rho"], p["a"], p["b"]), _racah_dj, 1.0,
        {"rho": 0.2, "a": 0.5, "b": 0.5, "const": 1.0},
    ),
    "dl-dh": LimitTransition(
        "dl-dh", lambda p: DiscreteEnsembleSpec.dh(p["rho"], "+" if p["sign"] >= 0 else "-"), None, 0.5,
        {"rho": 0.5, "sign": 1.0}, final_tolerance=0.01, default_grid=(100, 1000, 10_000), final_window=6,
    ),
}


def limit_transition(name: str) -> LimitTransition:
    """
    :param name: Registry key, e.g. 'meixner-dl'
    :return: The transition
    """
    try:
        return LIMIT_TRANSITIONS[name]
    except KeyError:
        known = ", ".join(sorted(LIMIT_TRANSITIONS))
        raise ParameterError("transition", f"unknown transition '{name}', expected one of {known}") from None
