"""
Scaling constants of the edge limits.

Classes:
    ScalingMap: Centering sigma, width tau and operator normalization c of a limit regime.

Functions:
    scaling: Closed-form constants of a regime.
    ensemble_scaling: Airy-edge constants of a DH or DL ensemble.
    dl_scaling_residuals: Residuals of the two equations that fix the DL edge constants.
"""

from typing import NamedTuple, Tuple, TYPE_CHECKING

import numpy as np

from .exceptions import ParameterError
from .vars import REGIMES, S_MODES

if TYPE_CHECKING:  # pragma: no cover
    from .configuration import DiscreteEnsembleSpec


class ScalingMap(NamedTuple):
    """
    Constants of the scaling v = (sigma - x) / tau

    Attributes:
        sigma: Centering
        tau: Fluctuation scale
        c: Normalization of the difference operator (1 for the particle-system regimes)
        regime: Name of the regime
    """

    sigma: float
    tau: float
    c: float
    regime: REGIMES


def _dh_airy(rho: float) -> ScalingMap:
    sigma = 0.5 * rho * rho
    if sigma <= 0:
        raise ParameterError("rho", "the Airy edge of DH needs rho != 0")
    return ScalingMap(sigma, sigma ** (1 / 3), sigma ** (1 / 6), "DH-Airy")


def _dl_airy(rho: float, beta: float, sign: str) -> ScalingMap:
    if sign == "+" and not rho > beta:
        raise ParameterError("rho", f"the DL+ edge needs rho > beta, got rho={rho}, beta={beta}")
    if sign == "-" and not beta > rho:
        raise ParameterError("rho", f"the DL- edge needs beta > rho, got rho={rho}, beta={beta}")
    sigma = (rho - beta) ** 2 / (4 * rho)
    tau = abs(rho * rho - beta * beta) ** (2 / 3) / (16 ** (1 / 3) * rho)
    c = np.sqrt(sigma * (sigma + beta)) / tau**2
    return ScalingMap(sigma, tau, float(c), "DL-Airy")


def _asep_tw(q: float, t: float, x: float) -> ScalingMap:
    if not 0 <= q < 1:
        raise ParameterError("q", "must lie in [0, 1)")
    t_eff = (1 - q) * t
    if not abs(x) < t_eff:
        raise ParameterError("x", f"the Tracy-Widom regime needs |x| < (1-q)t = {t_eff}")
    sigma = (t_eff - abs(x)) ** 2 / (4 * t_eff)
    tau = (t_eff**2 - x**2) ** (2 / 3) / (2 ** (4 / 3) * t_eff)
    return ScalingMap(sigma, tau, 1.0, "ASEP-TW")


def _asep_kpz(t_hat: float, x_hat: float) -> ScalingMap:
    if not t_hat > 0 or not 0 <= x_hat < t_hat:
        raise ParameterError("x_hat", "the KPZ regime needs 0 <= x_hat < t_hat")
    sigma = (t_hat - x_hat) ** 2 / (4 * t_hat)
    tau = (t_hat**2 - x_hat**2) ** (2 / 3) / (2 ** (4 / 3) * t_hat)
    return ScalingMap(sigma, tau, 1.0, "ASEP-KPZ")


def _six_vertex_kpz(s_mode: S_MODES, v: float, mu: float, nu: float) -> ScalingMap:
    if not 0 < v < 1:
        raise ParameterError("v", "must lie strictly inside (0, 1)")
    ratio = mu / nu
    lower = v if s_mode == "q^-1/2" else 0.0
    if not lower < ratio < 1 / v:
        raise ParameterError("mu", f"mu/nu = {ratio} is outside the liquid zone ({lower}, {1 / v})")

    left = (1 - np.sqrt(v * mu / nu)) ** (2 / 3)
    if s_mode == "q^-1/2":
        sigma = (np.sqrt(nu) - np.sqrt(v * mu)) ** 2 / (1 - v)
        tau = (v * mu * nu) ** (1 / 6) * left * (1 - np.sqrt(v * nu / mu)) ** (2 / 3) / (1 - v)
    else:
        sigma = (np.sqrt(nu) - np.sqrt(v * mu)) ** 2 / (1 + v)
        tau = (v * mu * nu) ** (1 / 6) * left * (1 + np.sqrt(v * nu / mu)) ** (2 / 3) / (1 + v)
    return ScalingMap(float(sigma), float(tau), 1.0, "6v-KPZ")


def scaling(regime: REGIMES, **params: float | str) -> ScalingMap:
    """
    Closed-form scaling constants

    Parameters per regime:
        DH-Airy: rho
        DL-Airy: rho, beta, sign ('+' or '-', default '+')
        ASEP-TW: q, t, x
        ASEP-KPZ: t_hat, x_hat
        6v-KPZ: s_mode, v, mu, nu

    :param regime: Name of the regime
    :param params: Regime parameters
    :return: The scaling constants
    :raises ParameterError: If a regime condition (edge ratio, liquid zone, |x| < t) fails
    """
    try:
        match regime:
            case "DH-Airy":
                return _dh_airy(abs(float(params["rho"])))
            case "DL-Airy":
                return _dl_airy(float(params["rho"]), float(params["beta"]), str(params.get("sign", "+")))
            case "ASEP-TW":
                return _asep_tw(float(params["q"]), float(params["t"]), float(params["x"]))
            case "ASEP-KPZ":
                return _asep_kpz(float(params["t_hat"]), float(params["x_hat"]))
            case "6v-KPZ":
                return _six_vertex_kpz(
                    params["s_mode"], float(params["v"]), float(params["mu"]), float(params["nu"])
                )
    except KeyError as missing:
        raise ParameterError(str(missing.args[0]), f"required by the {regime} regime") from None

    raise ParameterError("regime", f"unknown regime '{regime}'")


def ensemble_scaling(spec: "DiscreteEnsembleSpec") -> ScalingMap:
    """
    Airy-edge constants of a discrete Hermite or Laguerre ensemble

    DH+ needs rho > 0 and DH- needs rho < 0 (the edge moves to +inf with |rho|).

    :param spec: DH or DL ensemble
    :return: The scaling constants
    """
    match spec.base:
        case "DH":
            if (spec.rho > 0) != spec.is_plus:
                raise ParameterError("rho", f"{spec} has no Airy edge, the sign of rho must match the ensemble")
            return _dh_airy(abs(spec.rho))
        case "DL":
            return _dl_airy(spec.rho, spec.beta, spec.sign)
    raise ParameterError("base", f"{spec} has no Airy edge scaling")


def dl_scaling_residuals(rho: float, beta: float, sign: str = "+") -> Tuple[float, float]:
    """
    Residuals of the two DL edge equations

        2 sqrt(s(s+b)) +- (2s + b - rho) = 0
        sqrt(s(s+b)) / t^2 = t (2s + b +- 2 sqrt(s(s+b))) / sqrt(s(s+b))

    Both residuals are relative to the size of their terms.

    :param rho: Cut point
    :param beta: Laguerre parameter
    :param sign: Ensemble sign
    :return: The two residuals
    """
    sigma, tau, _, _ = _dl_airy(rho, beta, sign)
    s = 1.0 if sign == "+" else -1.0
    root = np.sqrt(sigma * (sigma + beta))
    first = (2 * root + s * (2 * sigma + beta - rho)) / (2 * root + abs(2 * sigma + beta - rho))
    lhs = root / tau**2
    rhs = tau * (2 * sigma + beta + s * 2 * root) / root
    return float(first), float((lhs - rhs) / lhs)
