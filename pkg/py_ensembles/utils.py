"""
Utils functions used throughout the package. Divided by auxiliary functions and parser functions.

Auxiliary functions:
    log_pochhammer: Sign and logarithm of the Pochhammer symbol (a)_n.
    panel_rule: Gauss-Legendre or Gauss-Jacobi rule on a single panel.
    replica_rng: Independent counter-based random stream of a Monte Carlo replica.
    map_replicas: Runs a replica function over chunks of replica indices, serially or on a process pool.
    worker_count: Default number of workers taken from the environment.

Parser functions:
    parse_config_lines: Parses flat 'key = value' configuration lines.
    parse_grid: Parses a 'start:stop:step' grid or a comma separated list of numbers.
    format_float: Formats a float with 17 significant digits.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln, gammasgn, roots_jacobi

from .exceptions import ParameterError
from .vars import GAUSS_NODES, REPLICA_CHUNK, WORKERS_ENV


# ----------------------------------------------------------------------------------------------------------------------
# AUXILIARY FUNCTIONS


def log_pochhammer(a: float, n: ArrayLike) -> Tuple[NDArray, NDArray]:
    """
    Computes the rising factorial (a)_n = a(a+1)...(a+n-1) in log-space

    :param a: Base of the symbol
    :param n: Nonnegative integer orders (array-like)
    :return: The sign and the logarithm of the absolute value, as arrays shaped like n
    """
    n = np.asarray(n, dtype=float)
    if a <= 0 and float(a).is_integer():
        m = -int(a)
        vanishes = n > m
        sign = np.where(vanishes, 0.0, np.where(n % 2 == 0, 1.0, -1.0))
        log = np.where(vanishes, -np.inf, gammaln(m + 1) - gammaln(np.clip(m - n, 0, None) + 1))
        return sign, log

    sign = gammasgn(a + n) * gammasgn(a)
    log = gammaln(a + n) - gammaln(a)
    return sign, log


@lru_cache(maxsize=64)
def _reference_rule(n: int, alpha: float, beta: float) -> Tuple[NDArray, NDArray]:
    """
    Gauss rule on [-1, 1] for the weight (1-u)^alpha (1+u)^beta, with the weight divided out of the weights

    :param n: Number of nodes
    :param alpha: Exponent at u = 1
    :param beta: Exponent at u = -1
    :return: Nodes and weights for integrands that already contain the weight
    """
    if alpha == 0.0 and beta == 0.0:
        return np.polynomial.legendre.leggauss(n)

    nodes, weights = roots_jacobi(n, alpha, beta)
    weights = weights / ((1.0 - nodes) ** alpha * (1.0 + nodes) ** beta)
    return nodes, weights


def panel_rule(
    lo: float, hi: float, n: int = GAUSS_NODES, alpha_lo: float = 0.0, alpha_hi: float = 0.0
) -> Tuple[NDArray, NDArray]:
    """
    Quadrature rule on [lo, hi] for integrands behaving like (t-lo)^alpha_lo (hi-t)^alpha_hi times a smooth function

    :param lo: Left end of the panel
    :param hi: Right end of the panel
    :param n: Number of nodes (default: GAUSS_NODES)
    :param alpha_lo: Algebraic exponent at the left end, 0 for a regular end (default: 0)
    :param alpha_hi: Algebraic exponent at the right end, 0 for a regular end (default: 0)
    :return: Nodes and weights
    """
    nodes, weights = _reference_rule(n, float(alpha_hi), float(alpha_lo))
    half = 0.5 * (hi - lo)
    return lo + half * (nodes + 1.0), half * weights


def replica_rng(seed: int, index: int) -> np.random.Generator:
    """
    Creates the random stream of one replica

    :param seed: Master seed
    :param index: Replica index
    :return: A generator driven by a Philox counter-based bit generator keyed by (seed, index)
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def worker_count(default: int = 1) -> int:
    """
    Reads the default worker count from the environment

    :param default: Value used when the variable is not set (default: 1)
    :return: A positive number of workers
    """
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return default
    try:
        workers = int(raw)
    except ValueError:
        raise ParameterError(WORKERS_ENV, f"expected an integer, got '{raw}'") from None
    if workers < 1:
        raise ParameterError(WORKERS_ENV, "must be at least 1")
    return workers


def map_replicas(fn: Callable[..., NDArray], n_replicas: int, workers: int = 1, *args) -> NDArray:
    """
    Evaluates fn(start, stop, *args) over consecutive chunks of replica indices and stacks the results

    The chunking does not depend on the worker count, so results are identical for any number of workers.

    :param fn: Module level function returning one row per replica in [start, stop)
    :param n_replicas: Total number of replicas
    :param workers: Number of processes (default: 1, runs in the current process)
    :param args: Extra positional arguments forwarded to fn
    :return: The concatenated rows, in replica order
    """
    bounds = [(start, min(start + REPLICA_CHUNK, n_replicas)) for start in range(0, n_replicas, REPLICA_CHUNK)]
    if not bounds:
        return np.empty((0,))

    if workers <= 1 or len(bounds) == 1:
        parts = [fn(start, stop, *args) for start, stop in bounds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, start, stop, *args) for start, stop in bounds]
            parts = [future.result() for future in futures]

    return np.concatenate(parts, axis=0)


# ----------------------------------------------------------------------------------------------------------------------
# PARSER FUNCTIONS


def parse_config_lines(lines: Iterable[str]) -> Dict[str, str]:
    """
    Parses flat 'key = value' configuration lines, '#' starts a comment

    :param lines: Lines of the configuration file
    :return: Dictionary with the raw string values
    """
    values = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError("config", f"line {number} is not of the form 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParameterError("config", f"line {number} has an empty key")
        values[key.replace("-", "_")] = value

    return values


def parse_grid(text: str) -> List[float]:
    """
    Parses a grid given as 'start:stop:step' (both ends included) or as a comma separated list

    :param text: Grid description
    :return: The grid values
    """
    try:
        if ":" not in text:
            return [float(part) for part in text.split(",") if part.strip()]
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise ParameterError("grid", f"cannot parse '{text}'") from None

    if step <= 0 or stop < start:
        raise ParameterError("grid", f"'{text}' is not an increasing grid")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def format_float(value: float) -> str:
    """
    Formats a float so that it round-trips exactly

    :param value: The value
    :return: The value with 17 significant digits
    """
    return f"{value:.17g}"
