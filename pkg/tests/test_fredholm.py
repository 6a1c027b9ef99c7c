import math

import numpy as np
import pytest

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.exceptions import ParameterError
from py_ensembles.fredholm import (
    MultiplicativeFunctional,
    airy_statistic_moments,
    expect_multiplicative,
    gap_det_continuous,
    gap_det_discrete,
    kpz_laplace_rhs,
    tracy_widom_gue,
)
from py_ensembles.kernels import kernel_matrix
from py_ensembles.orthopoly import FamilySpec, orthonormal_functions
from tests.oracles import configuration_law, laguerre_pair_gap


class TestGapProbabilities:
    def test_single_site(self, laguerre_plus):
        """
        Test that DL+(rho; 1) leaves the site 0 empty with probability 1 - exp(-rho)
        """
        assert gap_det_discrete(laguerre_plus, 1) == pytest.approx(1 - math.exp(-2.0), abs=1e-12)
        assert gap_det_discrete(laguerre_plus, 0) == 1.0
        with pytest.raises(ParameterError):
            gap_det_discrete(laguerre_plus, -1)

    def test_hermite_symmetry(self):
        """
        Test that a single Hermite particle is positive with probability one half
        """
        assert gap_det_discrete(DiscreteEnsembleSpec.dh(0.0), 1) == pytest.approx(0.5, abs=1e-12)
        assert gap_det_continuous(FamilySpec.hermite(), 1, (-math.inf, 0.0)) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("s", [0.5, 2.0, 5.0])
    def test_two_particle_laguerre(self, s):
        """
        Test the two-point Laguerre gap probability against its joint density
        """
        assert gap_det_continuous(FamilySpec.laguerre(1.0), 2, (s, math.inf)) == pytest.approx(
            laguerre_pair_gap(s), abs=1e-9
        )

    @pytest.mark.parametrize(
        "spec",
        [
            DiscreteEnsembleSpec.dh(1.0),
            DiscreteEnsembleSpec.dh(-0.5, "-"),
            DiscreteEnsembleSpec.dl(2.0, 2.5),
            DiscreteEnsembleSpec.dl(5.0, 0.5, "-"),
            DiscreteEnsembleSpec.dj(0.2, 0.5, -0.3, "-"),
        ],
    )
    def test_duality(self, spec):
        """
        Test that the discrete gap of {0..N-1} is the continuous gap of the matching half-line
        """
        interval = (spec.rho, math.inf) if spec.is_plus else (-math.inf, spec.rho)
        for N in range(1, 6):
            discrete = gap_det_discrete(spec, N)
            assert discrete == pytest.approx(gap_det_continuous(spec.family, N, interval), abs=1e-10)
            assert 0.0 <= discrete <= 1.0

    def test_against_kernel_determinant(self):
        """
        Test that det(1 - G) is the Fredholm determinant of the rank-N kernel on the interval, discretized on
        Gauss-Legendre nodes
        """
        nodes, weights = np.polynomial.legendre.leggauss(60)
        phi = orthonormal_functions(FamilySpec.hermite(), 3, nodes)
        root = np.sqrt(weights)
        fredholm = np.linalg.det(np.eye(60) - root[:, None] * (phi.T @ phi) * root[None, :])
        assert gap_det_continuous(FamilySpec.hermite(), 4, (-1.0, 1.0)) == pytest.approx(fredholm, abs=1e-10)

    def test_interval_clipped_to_support(self):
        """
        Test that interval ends outside the support are clipped
        """
        family = FamilySpec.laguerre(2.0)
        assert gap_det_continuous(family, 3, (-5.0, 1.0)) == pytest.approx(
            gap_det_continuous(family, 3, (0.0, 1.0)), abs=1e-14
        )
        assert gap_det_continuous(family, 0, (0.0, 1.0)) == 1.0


class TestMultiplicativeFunctionals:
    @pytest.mark.parametrize("zeta", [0.5, 3.0, 0.3 + 0.4j])
    def test_against_configuration_law(self, projection_kernel, zeta):
        """
        Test det(1 - (1 - f) K) against the sum over all configurations of the window
        """
        f = MultiplicativeFunctional.q_laplace(zeta, 0.6, shift=1)
        law = configuration_law(projection_kernel)
        expected = sum(p * np.prod(f(np.array(sites, dtype=float))) for sites, p in law.items())
        assert expect_multiplicative(projection_kernel, f) == pytest.approx(expected, abs=1e-12)

    def test_ensemble_window(self, laguerre_plus):
        """
        Test that the window chosen from the decay bound matches a large fixed window
        """
        f = MultiplicativeFunctional.q_laplace(1.0, 0.5)
        large = expect_multiplicative(kernel_matrix(laguerre_plus, 80), f)
        assert expect_multiplicative(laguerre_plus, f, tol=1e-12) == pytest.approx(large, abs=1e-11)

    def test_window_doubling(self, laguerre_plus):
        """
        Test the window doubling used when no decay bound is known
        """
        bounded = MultiplicativeFunctional.q_laplace(2.0, 0.5)
        unbounded = MultiplicativeFunctional(bounded.factor)
        assert expect_multiplicative(laguerre_plus, unbounded, tol=1e-12) == pytest.approx(
            expect_multiplicative(laguerre_plus, bounded, tol=1e-12), abs=1e-10
        )

    def test_invalid_base(self):
        """
        Test that the q-Laplace factor needs 0 < q < 1
        """
        with pytest.raises(ParameterError):
            MultiplicativeFunctional.q_laplace(1.0, 1.0)


class TestAiryDeterminants:
    @pytest.mark.parametrize(("s", "expected"), [(-2.0, 0.413224), (0.0, 0.969373)])
    def test_tracy_widom(self, s, expected):
        """
        Test the GUE Tracy-Widom distribution against tabulated values
        """
        assert tracy_widom_gue(s) == pytest.approx(expected, abs=1e-5)

    def test_tracy_widom_monotone(self):
        """
        Test that the distribution function increases from 0 to 1
        """
        values = [tracy_widom_gue(s) for s in (-6.0, -4.0, -1.0, 1.0, 4.0)]
        assert values == sorted(values)
        assert values[0] < 1e-6 and values[-1] > 1 - 1e-6

    def test_airy_laplace_mean(self):
        """
        Test that E sum exp(tau a_i) = exp(tau^3 / 12) / (2 sqrt(pi) tau^(3/2))
        """
        mean, second = airy_statistic_moments(10.0, 1.0)
        assert mean == pytest.approx(math.exp(1 / 12) / (2 * math.sqrt(math.pi)), rel=1e-6)
        assert 0.0 < second < mean**2

    def test_kpz_small_zeta(self):
        """
        Test the first order of the KPZ determinant in zeta_hat
        """
        zeta_hat = 1e-3
        first_order = 1 - zeta_hat * math.exp(1 / 12) / (2 * math.sqrt(math.pi))
        assert kpz_laplace_rhs(zeta_hat, 1.0) == pytest.approx(first_order, abs=1e-5)

    def test_kpz_monotone(self):
        """
        Test that the KPZ determinant decreases in zeta_hat and stays in (0, 1)
        """
        values = [kpz_laplace_rhs(z, 0.5) for z in (0.25, 1.0, 4.0)]
        assert values == sorted(values, reverse=True)
        assert 0.0 < values[-1] and values[0] < 1.0
        with pytest.raises(ParameterError):
            kpz_laplace_rhs(-1.0, 0.5)
