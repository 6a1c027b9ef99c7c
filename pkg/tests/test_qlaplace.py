import numpy as np
import pytest

from py_ensembles.configuration import PointConfiguration
from py_ensembles.exceptions import AccuracyError, DomainError, ParameterError
from py_ensembles.qlaplace import (
    QLaplaceParams,
    distribution_from_q_laplace,
    invert_q_laplace,
    q_laplace_config,
    q_laplace_rv,
    q_laplace_series,
    q_moment,
    q_pochhammer,
    shifted,
)
from tests.oracles import configuration_law

DIST = [0.2, 0.5, 0.3]


def transform(zeta):
    return q_laplace_rv(DIST, QLaplaceParams(0.5, zeta))


class TestQPochhammer:
    def test_finite(self):
        """
        Test a finite product and the empty product
        """
        assert q_pochhammer(0.5, 0.5, 3) == pytest.approx(0.5 * 0.75 * 0.875, rel=1e-15)
        assert q_pochhammer(0.5, 0.5, 0) == 1.0
        with pytest.raises(ParameterError):
            q_pochhammer(0.5, 0.5, -1)

    def test_infinite(self):
        """
        Test that the infinite product matches a long finite one
        """
        assert q_pochhammer(0.3, 0.5) == pytest.approx(q_pochhammer(0.3, 0.5, 200), rel=1e-14)
        assert q_pochhammer(0.0, 0.5) == 1.0

    def test_array(self):
        """
        Test that array base points give an array of products
        """
        values = q_pochhammer(np.array([0.1, -0.2j]), 0.3, 4)
        assert values.shape == (2,)
        assert values[0].real == pytest.approx(q_pochhammer(0.1, 0.3, 4))


class TestRandomVariables:
    @pytest.mark.parametrize("zeta", [0.4, -0.3, 0.2 + 0.5j])
    def test_series(self, zeta):
        """
        Test that the transform matches its power series inside the unit disk
        """
        params = QLaplaceParams(0.5, zeta)
        assert q_laplace_series(DIST, params, 80) == pytest.approx(q_laplace_rv(DIST, params), abs=1e-13)

    def test_constant(self):
        """
        Test that the transform of xi = 0 is 1 / (-zeta; q)_inf
        """
        params = QLaplaceParams(0.3, 2.0)
        assert q_laplace_rv([1.0], params) == pytest.approx(1 / q_pochhammer(-2.0, 0.3), rel=1e-14)

    def test_invalid(self):
        """
        Test that bad bases, bad distributions and poles are rejected
        """
        with pytest.raises(ParameterError):
            QLaplaceParams(1.0, 0.5)
        with pytest.raises(ParameterError):
            q_laplace_rv([0.5, 0.4], QLaplaceParams(0.5, 1.0))
        with pytest.raises(DomainError):
            q_laplace_rv(DIST, QLaplaceParams(0.5, -2.0))

    def test_shifted(self):
        """
        Test that shifting the variable rescales zeta by q^S
        """
        shifted_dist = [0.0, 0.0] + DIST
        assert shifted(transform, 0.5, 2)(1.5) == pytest.approx(
            q_laplace_rv(shifted_dist, QLaplaceParams(0.5, 1.5)), rel=1e-14
        )


class TestInversion:
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_probabilities(self, n):
        """
        Test that the contour integral recovers every probability
        """
        expected = DIST[n] if n < len(DIST) else 0.0
        assert invert_q_laplace(transform, 0.5, n) == pytest.approx(expected, abs=1e-8)

    def test_vectorized(self):
        """
        Test that a transform evaluated on arrays gives the same probabilities
        """
        assert invert_q_laplace(transform, 0.5, 1, vectorized=True) == pytest.approx(
            invert_q_laplace(transform, 0.5, 1), abs=1e-12
        )

    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_moments(self, n):
        """
        Test that the q-moments are read off the Taylor coefficients
        """
        expected = float(np.dot(DIST, 0.5 ** (n * np.arange(3))))
        assert q_moment(transform, 0.5, n) == pytest.approx(expected, abs=1e-8)

    def test_distribution(self):
        """
        Test that the inversion stops once the recovered mass is complete
        """
        assert np.allclose(distribution_from_q_laplace(transform, 0.5, 10), DIST, atol=1e-8)
        with pytest.raises(AccuracyError):
            distribution_from_q_laplace(transform, 0.5, 1)

    def test_invalid(self):
        """
        Test that the base and the value are checked
        """
        with pytest.raises(ParameterError):
            invert_q_laplace(transform, 1.5, 0)
        with pytest.raises(ParameterError):
            invert_q_laplace(transform, 0.5, -1)


class TestConfigurations:
    def test_product(self):
        """
        Test the transform of a fixed configuration and of its shift
        """
        params = QLaplaceParams(0.5, 1.0)
        assert q_laplace_config([0, 2], params) == pytest.approx(0.5 / 1.25, rel=1e-15)
        config = PointConfiguration((1, 4))
        assert q_laplace_config(config, params, shift=3) == pytest.approx(
            q_laplace_config(config.shifted(3), params), rel=1e-15
        )

    def test_pole(self):
        """
        Test that a configuration on a pole is rejected
        """
        with pytest.raises(DomainError):
            q_laplace_config([0, 1], QLaplaceParams(0.5, -2.0))

    def test_expectation(self, projection_kernel):
        """
        Test the expectation over a kernel against the configuration law
        """
        params = QLaplaceParams(0.7, 2.0)
        law = configuration_law(projection_kernel)
        expected = sum(p * q_laplace_config(list(sites), params, shift=2) for sites, p in law.items())
        assert q_laplace_config(projection_kernel, params, shift=2) == pytest.approx(expected, abs=1e-12)
