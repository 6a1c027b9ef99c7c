"""
Point configurations and discrete ensembles.

Classes:
    PointConfiguration: Finite sorted set of nonnegative integer sites.
    DiscreteEnsembleSpec: One of the ensembles DH+-(rho), DL+-(rho; beta), DJ+-(rho; a, b).

Functions:
    input_to_configuration: Transforms a list of sites or a text line into a PointConfiguration.
    input_to_ensemble: Transforms a label such as 'DL+' and its parameters into a DiscreteEnsembleSpec.
"""

from dataclasses import dataclass, field
from typing import Iterable, Tuple

import numpy as np

from .exceptions import ParameterError
from .orthopoly import FamilySpec
from .vars import ENSEMBLE_BASES, SIGNS


@dataclass(frozen=True)
class PointConfiguration:
    """
    Finite configuration of points on Z>=0

    Attributes:
        sites: Strictly increasing tuple of nonnegative sites
    """

    sites: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        sites = tuple(int(s) for s in self.sites)
        if any(s < 0 for s in sites):
            raise ParameterError("sites", "configurations live on nonnegative integers")
        if any(b <= a for a, b in zip(sites, sites[1:])):
            raise ParameterError("sites", "sites must be strictly increasing")
        object.__setattr__(self, "sites", sites)

    def __len__(self) -> int:
        return len(self.sites)

    def __contains__(self, site: int) -> bool:
        return site in self.sites

    def __iter__(self):
        return iter(self.sites)

    def complement(self, size: int) -> "PointConfiguration":
        """
        Particle/hole involution on {0..size-1}

        :param size: Size of the finite state space
        :return: The sites of {0..size-1} that are not in the configuration
        """
        if self.sites and self.sites[-1] >= size:
            raise ParameterError("size", f"configuration {self.sites} does not fit in {{0..{size - 1}}}")
        occupied = set(self.sites)
        return PointConfiguration(tuple(s for s in range(size) if s not in occupied))

    def shifted(self, shift: int) -> "PointConfiguration":
        """
        :param shift: Nonnegative amount added to every site
        :return: The configuration S + X
        """
        return PointConfiguration(tuple(s + shift for s in self.sites))

    def to_line(self) -> str:
        """
        :return: The sites separated by spaces, one configuration per line in sample files
        """
        return " ".join(str(s) for s in self.sites)


def input_to_configuration(data: Iterable[int] | str | PointConfiguration) -> PointConfiguration:
    """
    Converts a given set of sites into a PointConfiguration

    :param data: Iterable of sites, a space separated line of sites or a PointConfiguration
    :return: The sorted configuration
    """
    if isinstance(data, PointConfiguration):
        return data
    if isinstance(data, str):
        try:
            return PointConfiguration(tuple(sorted(int(s) for s in data.split())))
        except ValueError:
            raise ParameterError("sites", f"cannot parse '{data}'") from None
    try:
        return PointConfiguration(tuple(sorted(int(s) for s in data)))
    except TypeError:
        raise TypeError("Argument must be an iterable of integers, a string or a PointConfiguration") from None


@dataclass(frozen=True)
class DiscreteEnsembleSpec:
    """
    Discrete ensemble defined by a cut point of a continuous orthogonal polynomial system

    Attributes:
        base: 'DH', 'DL' or 'DJ'
        sign: '+' projects on (rho, +inf), '-' on (-inf, rho)
        rho: Cut point
        beta: Laguerre parameter (DL only)
        a: Jacobi parameter at t = 1 (DJ only)
        b: Jacobi parameter at t = -1 (DJ only)
    """

    base: ENSEMBLE_BASES
    sign: SIGNS
    rho: float
    beta: float | None = None
    a: float | None = None
    b: float | None = None

    def __post_init__(self) -> None:
        if self.base not in ("DH", "DL", "DJ"):
            raise ParameterError("base", f"unknown ensemble '{self.base}'")
        if self.sign not in ("+", "-"):
            raise ParameterError("sign", f"expected '+' or '-', got '{self.sign}'")
        # Validates the family parameters
        family = self.family

        lo, hi = family.interval
        if not lo <= self.rho < hi or np.isnan(self.rho):
            raise ParameterError("rho", f"cut point {self.rho} is outside the support of {family}")

    @classmethod
    def dh(cls, rho: float, sign: SIGNS = "+") -> "DiscreteEnsembleSpec":
        return cls("DH", sign, float(rho))

    @classmethod
    def dl(cls, rho: float, beta: float, sign: SIGNS = "+") -> "DiscreteEnsembleSpec":
        return cls("DL", sign, float(rho), beta=float(beta))

    @classmethod
    def dj(cls, rho: float, a: float, b: float, sign: SIGNS = "+") -> "DiscreteEnsembleSpec":
        return cls("DJ", sign, float(rho), a=float(a), b=float(b))

    @property
    def family(self) -> FamilySpec:
        """
        :return: The continuous family the ensemble is built from
        """
        match self.base:
            case "DH":
                return FamilySpec.hermite()
            case "DL":
                return FamilySpec.laguerre(self.beta)
            case _:
                return FamilySpec.jacobi(self.a, self.b)

    @property
    def is_plus(self) -> bool:
        return self.sign == "+"

    def complement(self) -> "DiscreteEnsembleSpec":
        """
        :return: The same cut point with the other sign, whose kernel is 1 - K
        """
        return DiscreteEnsembleSpec(self.base, "-" if self.is_plus else "+", self.rho, self.beta, self.a, self.b)

    def __str__(self) -> str:
        match self.base:
            case "DH":
                return f"DH{self.sign}(rho={self.rho})"
            case "DL":
                return f"DL{self.sign}(rho={self.rho}; beta={self.beta})"
            case _:
                return f"DJ{self.sign}(rho={self.rho}; a={self.a}, b={self.b})"


def input_to_ensemble(
    label: str | DiscreteEnsembleSpec, rho: float = None, beta: float = None, a: float = None, b: float = None
) -> DiscreteEnsembleSpec:
    """
    Converts an ensemble label and its parameters into a DiscreteEnsembleSpec

    :param label: 'DH+', 'DH-', 'DL+', 'DL-', 'DJ+', 'DJ-' or a DiscreteEnsembleSpec
    :param rho: Cut point
    :param beta: Laguerre parameter (DL only)
    :param a: Jacobi parameter (DJ only)
    :param b: Jacobi parameter (DJ only)
    :return: The ensemble
    """
    if isinstance(label, DiscreteEnsembleSpec):
        return label
    text = label.strip().upper()
    if len(text) != 3 or text[:2] not in ("DH", "DL", "DJ") or text[2] not in "+-":
        raise ParameterError("ensemble", f"expected one of DH+, DH-, DL+, DL-, DJ+, DJ-, got '{label}'")
    if rho is None:
        raise ParameterError("rho", f"required by {text}")

    base, sign = text[:2], text[2]
    match base:
        case "DH":
            return DiscreteEnsembleSpec.dh(rho, sign)
        case "DL":
            if beta is None:
                raise ParameterError("beta", "required by DL ensembles")
            return DiscreteEnsembleSpec.dl(rho, beta, sign)
        case _:
            if a is None or b is None:
                raise ParameterError("a", "DJ ensembles require both a and b")
            return DiscreteEnsembleSpec.dj(rho, a, b, sign)
