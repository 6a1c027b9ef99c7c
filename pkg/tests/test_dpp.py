from itertools import combinations

import numpy as np
import pytest

from py_ensembles.configuration import PointConfiguration
from py_ensembles.dpp import (
    config_probability,
    empirical_correlation,
    read_samples,
    sample_dpp,
    sample_many,
    write_samples,
)
from py_ensembles.exceptions import KernelValidityError, ParameterError
from py_ensembles.kernels import KernelMatrix
from py_ensembles.utils import replica_rng
from tests.oracles import configuration_law


class TestSampling:
    def test_workers(self, laguerre_kernel):
        """
        Test that the samples do not depend on the number of workers
        """
        serial = sample_many(laguerre_kernel, 600, seed=3)
        assert sample_many(laguerre_kernel, 600, seed=3, workers=2) == serial
        assert len(serial) == 600

    def test_reproducible(self, laguerre_kernel):
        """
        Test that a seed fixes every sample
        """
        first = sample_many(laguerre_kernel, 20, seed=7)
        assert first == sample_many(laguerre_kernel, 20, seed=7)
        assert sample_many(laguerre_kernel, 5, seed=7) == first[:5]

    def test_projection_sample_size(self, projection_kernel):
        """
        Test that a rank 3 projection always gives three points inside the window
        """
        for sample in sample_many(projection_kernel, 50, seed=1):
            assert len(sample) == 3
            assert all(0 <= site < projection_kernel.size for site in sample)

    def test_single_sample(self, projection_kernel):
        """
        Test that a single draw from a stream is a valid configuration
        """
        sample = sample_dpp(projection_kernel, replica_rng(3, 0))
        assert isinstance(sample, PointConfiguration)
        assert len(sample) == 3

    def test_law(self, laguerre_kernel):
        """
        Test that the empirical law of the samples matches the exact configuration law
        """
        K = laguerre_kernel.block(2)
        samples = sample_many(K, 4000, seed=11)
        for sites, p in configuration_law(K).items():
            frequency = sum(sample.sites == sites for sample in samples) / len(samples)
            assert abs(frequency - p) < 5 * np.sqrt(p * (1 - p) / len(samples)) + 1e-3

    def test_invalid_kernel(self):
        """
        Test that kernels with eigenvalues outside [0, 1] are rejected
        """
        with pytest.raises(KernelValidityError):
            sample_many(KernelMatrix(2 * np.eye(3)), 1, seed=0)
        with pytest.raises(KernelValidityError):
            sample_dpp(KernelMatrix(-np.eye(2)), replica_rng(0, 0))


class TestCorrelations:
    def test_density(self, laguerre_kernel):
        """
        Test that the empirical one- and two-point functions match the kernel minors
        """
        samples = sample_many(laguerre_kernel, 3000, seed=5)
        for points in ([0], [2], [1, 3]):
            mean, se = empirical_correlation(samples, points)
            assert abs(mean - laguerre_kernel.minor(points)) < 5 * se + 1e-3

    def test_invalid(self):
        """
        Test that correlation points are distinct and samples are given
        """
        with pytest.raises(ParameterError):
            empirical_correlation([PointConfiguration((1,))], [1, 1])
        with pytest.raises(ParameterError):
            empirical_correlation([], [0])


class TestConfigurationProbability:
    def test_total_mass(self, projection_kernel):
        """
        Test that the three-point configurations of the window carry all the mass
        """
        total = sum(config_probability(projection_kernel, sites) for sites in combinations(range(7), 3))
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_outside_window(self, projection_kernel):
        """
        Test that a configuration leaving the window has probability zero
        """
        assert config_probability(projection_kernel, [0, 1, 9]) == 0.0

    def test_not_a_projection(self, laguerre_kernel):
        """
        Test that a kernel with max |K^2 - K| above 1e-8 is refused
        """
        with pytest.raises(KernelValidityError):
            config_probability(laguerre_kernel, [0, 1])

    def test_nearly_a_projection(self, projection_kernel):
        """
        Test that a perturbation of 1e-10 is still accepted as a projection
        """
        entries = np.array(projection_kernel.entries) + 1e-10 * np.eye(7)
        assert config_probability(KernelMatrix(entries), [0, 1, 2]) == pytest.approx(
            config_probability(projection_kernel, [0, 1, 2]), abs=1e-8
        )

    def test_rank_mismatch(self, projection_kernel):
        """
        Test that the configuration size must match the rank
        """
        with pytest.raises(ParameterError):
            config_probability(projection_kernel, [0, 1])


class TestSerialization:
    def test_write_read(self, tmp_path):
        """
        Test that samples survive a trip through a file, empty configurations included
        """
        samples = [PointConfiguration((0, 3)), PointConfiguration(), PointConfiguration((5,))]
        path = tmp_path / "samples.txt"
        write_samples(samples, path)
        assert path.read_text(encoding="utf-8") == "0 3\n\n5\n"
        assert read_samples(path) == samples
