"""
Exact sampling of determinantal point processes on a finite window.

Functions:
    sample_dpp: Draws one configuration from the determinantal measure of a kernel matrix.
    sample_many: Draws independent configurations, one replica stream per sample.
    empirical_correlation: Fraction of samples containing given sites, with its standard error.
    config_probability: Probability of a full configuration under a rank-N projection kernel.
    write_samples: Serializes configurations, one per line.
    read_samples: Parses configurations written by write_samples.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .configuration import PointConfiguration, input_to_configuration
from .exceptions import EnsembleWarnings, KernelValidityError, ParameterError
from .kernels import KernelMatrix
from .utils import map_replicas, replica_rng
from .vars import EIGENVALUE_CLAMP, EIGENVALUE_REJECT, PROJECTION_TOL

logger = logging.getLogger(__name__)


def _spectrum(K: KernelMatrix) -> Tuple[NDArray, NDArray]:
    eigenvalues, eigenvectors = np.linalg.eigh(K.entries)
    outside = (eigenvalues < -EIGENVALUE_REJECT) | (eigenvalues > 1 + EIGENVALUE_REJECT)
    if np.any(outside):
        raise KernelValidityError(float(eigenvalues[outside][0]))

    drifting = (eigenvalues < -EIGENVALUE_CLAMP) | (eigenvalues > 1 + EIGENVALUE_CLAMP)
    for value in eigenvalues[drifting]:
        EnsembleWarnings.clamped_eigenvalue(float(value))
    return np.clip(eigenvalues, 0.0, 1.0), eigenvectors


def _sample_projection(vectors: NDArray, rng: np.random.Generator) -> List[int]:
    """
    Sequential sampling from the projection onto the span of orthonormal columns
    """
    sites = []
    V = vectors.copy()
    while V.shape[1] > 0:
        probabilities = np.sum(V**2, axis=1)
        site = int(rng.choice(V.shape[0], p=probabilities / probabilities.sum()))
        sites.append(site)

        # Eliminates the chosen site from the span and re-orthonormalizes
        pivot = int(np.argmax(np.abs(V[site])))
        column = V[:, pivot].copy()
        V = np.delete(V, pivot, axis=1)
        V -= np.outer(column, V[site] / column[site])
        if V.shape[1] > 0:
            V, _ = np.linalg.qr(V)
    return sorted(sites)


def sample_dpp(K: KernelMatrix, rng: np.random.Generator) -> PointConfiguration:
    """
    Draws a configuration whose law is the determinantal measure of K on its window

    Eigenvalues act as independent selection probabilities of their eigenvectors, then a projection sample is drawn
    from the selected eigenvectors.

    :param K: Symmetric kernel with eigenvalues in [0, 1]
    :param rng: Random stream
    :return: The sampled configuration
    :raises KernelValidityError: If an eigenvalue lies outside [-1e-6, 1 + 1e-6]
    """
    eigenvalues, eigenvectors = _spectrum(K)
    selected = rng.random(eigenvalues.size) < eigenvalues
    return PointConfiguration(tuple(_sample_projection(eigenvectors[:, selected], rng)))


def _sample_chunk(start: int, stop: int, eigenvalues: NDArray, eigenvectors: NDArray, seed: int) -> NDArray:
    samples = np.empty(stop - start, dtype=object)
    for offset, index in enumerate(range(start, stop)):
        rng = replica_rng(seed, index)
        selected = rng.random(eigenvalues.size) < eigenvalues
        samples[offset] = PointConfiguration(tuple(_sample_projection(eigenvectors[:, selected], rng)))
    return samples


def sample_many(K: KernelMatrix, n_samples: int, seed: int, workers: int = 1) -> List[PointConfiguration]:
    """
    Draws independent configurations, sample i using the replica stream (seed, i)

    :param K: Kernel
    :param n_samples: Number of samples
    :param seed: Master seed
    :param workers: Number of processes (default: 1)
    :return: The samples in replica order, identical for any number of workers
    """
    eigenvalues, eigenvectors = _spectrum(K)
    samples = map_replicas(_sample_chunk, n_samples, workers, eigenvalues, eigenvectors, seed)
    logger.debug("drew %d samples on a window of %d sites", n_samples, K.size)
    return list(samples)


def empirical_correlation(samples: Sequence[PointConfiguration], points: Iterable[int]) -> Tuple[float, float]:
    """
    Empirical correlation function: the fraction of samples containing all the points

    :param samples: Sampled configurations
    :param points: Distinct sites
    :return: The fraction and its standard error
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise ParameterError("points", "correlation points must be distinct")
    if not samples:
        raise ParameterError("samples", "at least one sample is required")
    hits = np.array([all(p in sample for p in points) for sample in samples], dtype=float)
    mean = float(hits.mean())
    return mean, float(np.sqrt(mean * (1 - mean) / hits.size))


def config_probability(K: KernelMatrix, config: PointConfiguration | Iterable[int]) -> float:
    """
    Probability P(X = config) of an N-point ensemble whose kernel is a rank-N projection

    :param K: Rank-N projection kernel on its window
    :param config: Configuration of N sites
    :return: det[K(x_i, x_j)]
    :raises KernelValidityError: If max |K^2 - K| exceeds PROJECTION_TOL
    :raises ParameterError: If the rank of K is not the size of the configuration
    """
    config = input_to_configuration(config)
    residual = float(np.max(np.abs(K.entries @ K.entries - K.entries), initial=0.0))
    if residual > PROJECTION_TOL:
        raise KernelValidityError(residual, "Kernel is not a projection, max |K^2 - K|")
    rank = int(round(float(np.trace(K.entries))))
    if rank != len(config):
        raise ParameterError("config", f"a kernel of rank {rank} needs {rank} points, got {len(config)}")
    if config.sites and config.sites[-1] >= K.size:
        return 0.0
    return max(0.0, K.minor(config.sites))


def write_samples(samples: Iterable[PointConfiguration], path: Path | str) -> None:
    """
    Writes one configuration per line, sites separated by spaces

    :param samples: Configurations
    :param path: Output file
    """
    with open(path, "w", encoding="utf-8") as handle:
        for sample in samples:
            handle.write(sample.to_line() + "\n")


def read_samples(path: Path | str) -> List[PointConfiguration]:
    """
    :param path: File written by write_samples
    :return: The configurations
    """
    with open(path, encoding="utf-8") as handle:
        return [input_to_configuration(line) for line in handle.read().splitlines()]
