"""
Partitions, principal specializations of Schur polynomials, the Schur measures SM and SM' and their pushforwards onto
Meixner and Krawtchouk ensembles.

Classes:
    Partition: Weakly decreasing tuple of positive parts.
    ConfigurationLaw: Exact law of a finite random configuration with the mass left outside the enumeration.

Functions:
    enumerate_box: All partitions inside a rows x cols box.
    partitions_of_size: All partitions of n, optionally inside a box.
    principal_specialization: s_lambda(x, ..., x) by the Weyl dimension formula.
    schur_measure_weight: Weight of a partition under SM(x^a; y^b) or SM'(x^a; y^b).
    cauchy_stratum: Total weight of the partitions of size k.
    pushforward_config: The point configuration a partition is mapped to.
    pushforward_law: Law of the pushed-forward configuration.
    ensemble_law: Law of an N-point discrete orthogonal polynomial ensemble on a window.
    complement_law: Particle/hole involution of a law on a finite set.
    total_variation: Total-variation distance between two laws.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, Iterator, NamedTuple, Tuple

import numpy as np

from .configuration import PointConfiguration
from .exceptions import EnsembleWarnings, ParameterError
from .kernels import cd_kernel_matrix
from .orthopoly import FamilySpec

logger = logging.getLogger(__name__)

DEFAULT_BOX_COLUMNS = 12  # Column bound of the SM enumeration when none is given


@dataclass(frozen=True)
class Partition:
    """
    Integer partition lambda_1 >= lambda_2 >= ... > 0

    Attributes:
        parts: Weakly decreasing positive parts
    """

    parts: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(b > a for a, b in zip(parts, parts[1:])):
            raise ParameterError("parts", f"{parts} is not a weakly decreasing tuple of positive integers")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        """
        :return: |lambda|, the sum of the parts
        """
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        """
        :return: The transposed partition, lambda'_j = #{i : lambda_i >= j}
        """
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def padded(self, length: int) -> Tuple[int, ...]:
        return self.parts + (0,) * (length - self.length)


class ConfigurationLaw(NamedTuple):
    """
    Attributes:
        probabilities: Probability of every enumerated configuration
        excluded: Mass of the configurations left out of the enumeration
    """

    probabilities: Dict[PointConfiguration, float]
    excluded: float


# ----------------------------------------------------------------------------------------------------------------------
# ENUMERATION


def enumerate_box(rows: int, cols: int) -> Iterator[Partition]:
    """
    :param rows: Maximal number of parts
    :param cols: Maximal part
    :return: Iterator over the partitions inside the box, the empty one first
    """

    def extend(prefix: Tuple[int, ...], bound: int) -> Iterator[Tuple[int, ...]]:
        yield prefix
        if len(prefix) == rows:
            return
        for part in range(1, bound + 1):
            yield from extend(prefix + (part,), part)

    for parts in extend((), cols):
        yield Partition(parts)


def partitions_of_size(n: int, max_rows: int = None, max_cols: int = None) -> Iterator[Partition]:
    """
    :param n: Size
    :param max_rows: Maximal number of parts (default: unbounded)
    :param max_cols: Maximal part (default: unbounded)
    :return: Iterator over the partitions of n inside the box
    """
    rows = n if max_rows is None else max_rows
    cols = n if max_cols is None else max_cols

    def split(rest: int, bound: int, room: int) -> Iterator[Tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for part in range(min(rest, bound), 0, -1):
            for tail in split(rest - part, part, room - 1):
                yield (part,) + tail

    for parts in split(n, cols, rows):
        yield Partition(parts)


# ----------------------------------------------------------------------------------------------------------------------
# SCHUR MEASURES


def principal_specialization(lam: Partition, a: int, x: float) -> float:
    """
    s_lambda(x, ..., x) with a variables, x^|lambda| prod_{i<j} (lambda_i - i - lambda_j + j) / (j - i)

    :param lam: Partition
    :param a: Number of variables
    :param x: Common value of the variables
    :return: The specialization, 0 when lambda has more than a parts
    """
    if lam.length > a:
        return 0.0
    shifted = np.array(lam.padded(a)) - np.arange(1, a + 1)
    i, j = np.triu_indices(a, k=1)
    log_value = np.sum(np.log(shifted[i] - shifted[j])) - np.sum(np.log(j - i))
    if lam.size:
        log_value += lam.size * np.log(x)
    return float(np.exp(log_value))


def _check_measure(a: int, b: int, x: float, y: float, primed: bool) -> None:
    if a < 1 or b < 1:
        raise ParameterError("a", "both specializations need at least one variable")
    if not x > 0 or not y > 0:
        raise ParameterError("x", "specialization values must be positive")
    if not primed and x * y >= 1:
        raise ParameterError("x", f"SM needs xy < 1, got xy = {x * y}")


def schur_measure_weight(lam: Partition, a: int, x: float, b: int, y: float, primed: bool = False) -> float:
    """
    SM: s_lambda(x^a) s_lambda(y^b) (1 - xy)^(ab); SM': s_lambda(x^a) s_lambda'(y^b) (1 + xy)^(-ab)

    :param lam: Partition
    :param a: Number of x variables
    :param x: Value of the x variables
    :param b: Number of y variables
    :param y: Value of the y variables
    :param primed: Whether the dual measure SM' is meant (default: False)
    :return: The probability of lambda
    """
    _check_measure(a, b, x, y, primed)
    left = principal_specialization(lam, a, x)
    if primed:
        return left * principal_specialization(lam.conjugate(), b, y) * (1 + x * y) ** (-a * b)
    return left * principal_specialization(lam, b, y) * (1 - x * y) ** (a * b)


def cauchy_stratum(k: int, a: int, b: int, x: float, y: float, primed: bool = False) -> float:
    """
    Unnormalized weight of the partitions of size k: C(ab + k - 1, k)(xy)^k for SM and C(ab, k)(xy)^k for SM'

    :return: The stratum weight, before division by the Cauchy product
    """
    count = comb(a * b, k) if primed else comb(a * b + k - 1, k)
    return float(count * (x * y) ** k)


def pushforward_config(lam: Partition, a: int, b: int, primed: bool = False) -> PointConfiguration:
    """
    SM: lambda -> {min(a, b) + lambda_i - i}, i = 1..min(a, b); SM': lambda -> {a + lambda_i - i}, i = 1..a

    :param lam: Partition with at most min(a, b) (SM) or a (SM') parts
    :param a: Number of x variables
    :param b: Number of y variables
    :param primed: Whether the dual measure SM' is meant (default: False)
    :return: The configuration
    """
    count = a if primed else min(a, b)
    if lam.length > count:
        raise ParameterError("lam", f"{lam.parts} has more than {count} parts")
    parts = lam.padded(count)
    return PointConfiguration(tuple(sorted(count + parts[i - 1] - i for i in range(1, count + 1))))


def pushforward_law(a: int, b: int, x: float, y: float, primed: bool = False, cols: int = None) -> ConfigurationLaw:
    """
    Law of the pushed-forward configuration, enumerated over a box

    SM' is supported by the a x b box and is enumerated exactly. SM is enumerated over min(a, b) rows and cols columns;
    the mass outside is reported.

    :param a: Number of x variables
    :param b: Number of y variables
    :param x: Value of the x variables
    :param y: Value of the y variables
    :param primed: Whether the dual measure SM' is meant (default: False)
    :param cols: Column bound for SM (default: DEFAULT_BOX_COLUMNS)
    :return: The law and the excluded mass
    """
    _check_measure(a, b, x, y, primed)
    rows = a if primed else min(a, b)
    width = b if primed else (DEFAULT_BOX_COLUMNS if cols is None else cols)

    law = {}
    for lam in enumerate_box(rows, width):
        config = pushforward_config(lam, a, b, primed)
        law[config] = law.get(config, 0.0) + schur_measure_weight(lam, a, x, b, y, primed)

    excluded = max(0.0, 1.0 - sum(law.values()))
    if excluded > 1e-12:
        EnsembleWarnings.truncated_mass(excluded, f"partitions outside the {rows} x {width} box")
    logger.debug("pushforward of %d partitions, excluded mass %.3g", len(law), excluded)
    return ConfigurationLaw(law, excluded)


def ensemble_law(spec: FamilySpec, N: int, window: int) -> ConfigurationLaw:
    """
    Law of the N-point orthogonal polynomial ensemble of a discrete family, over the N-subsets of {0..window-1}

    :param spec: Discrete family
    :param N: Number of particles
    :param window: Number of sites enumerated
    :return: The law and the mass of configurations leaving the window
    """
    if N < 0 or window < N:
        raise ParameterError("window", f"{window} sites cannot hold {N} particles")
    if N == 0:
        return ConfigurationLaw({PointConfiguration(): 1.0}, 0.0)
    K = cd_kernel_matrix(spec, N, window - 1)
    law = {}
    for sites in combinations(range(window), N):
        law[PointConfiguration(sites)] = max(0.0, K.minor(sites))
    return ConfigurationLaw(law, max(0.0, 1.0 - sum(law.values())))


def complement_law(law: ConfigurationLaw, support: int) -> ConfigurationLaw:
    """
    :param law: Law of a configuration on {0..support-1}
    :param support: Size of the finite state space
    :return: The law of the complementary configuration
    """
    return ConfigurationLaw(
        {config.complement(support): p for config, p in law.probabilities.items()}, law.excluded
    )


def total_variation(first: ConfigurationLaw, second: ConfigurationLaw) -> float:
    """
    :return: Half the l1 distance over the union of both enumerations; the excluded masses bound what it misses
    """
    keys = set(first.probabilities) | set(second.probabilities)
    return 0.5 * sum(abs(first.probabilities.get(k, 0.0) - second.probabilities.get(k, 0.0)) for k in keys)
