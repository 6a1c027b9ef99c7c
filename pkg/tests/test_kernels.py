import math

import numpy as np
import pytest
from scipy.integrate import quad

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.exceptions import DomainError, ParameterError
from py_ensembles.kernels import (
    KernelMatrix,
    airy_function,
    airy_kernel,
    cd_kernel,
    cd_kernel_direct,
    cd_kernel_matrix,
    complement_kernel,
    discrete_kernel_integrable,
    discrete_kernel_quadrature,
    interval_gram,
    kernel_matrix,
)
from py_ensembles.orthopoly import FamilySpec
from tests.oracles import finite_cd_kernel, meixner_cd_kernel


ENSEMBLES = [
    DiscreteEnsembleSpec.dh(0.5),
    DiscreteEnsembleSpec.dh(-1.0, "-"),
    DiscreteEnsembleSpec.dl(2.0, 1.0),
    DiscreteEnsembleSpec.dl(3.0, 2.5, "-"),
    DiscreteEnsembleSpec.dj(0.2, 0.5, -0.3),
    DiscreteEnsembleSpec.dj(-0.4, 0.0, 0.0, "-"),
]


class TestKernelMatrix:
    def test_read_only(self, laguerre_kernel):
        """
        Test that kernel entries cannot be modified
        """
        with pytest.raises(ValueError):
            laguerre_kernel.entries[0, 0] = 1.0

    def test_not_square(self):
        """
        Test that a kernel must be square
        """
        with pytest.raises(ParameterError):
            KernelMatrix(np.zeros((2, 3)))

    def test_block(self, laguerre_kernel):
        """
        Test that a block keeps the leading sites
        """
        block = laguerre_kernel.block(2)
        assert block.size == 3
        assert list(block.window) == [0, 1, 2]
        assert block[1, 2] == laguerre_kernel[1, 2]
        with pytest.raises(ParameterError):
            laguerre_kernel.block(6)

    def test_gauge(self, laguerre_kernel):
        """
        Test that the gauge keeps every correlation function
        """
        gauged = laguerre_kernel.gauge()
        assert gauged[0, 1] == -laguerre_kernel[0, 1]
        for sites in ([0], [1, 2], [0, 3, 4]):
            assert gauged.minor(sites) == pytest.approx(laguerre_kernel.minor(sites), abs=1e-14)
        assert laguerre_kernel.minor([]) == 1.0

    def test_complement_kernel(self, laguerre_kernel):
        """
        Test that the particle/hole involution is 1 - K
        """
        assert np.allclose(complement_kernel(laguerre_kernel).entries, np.eye(6) - laguerre_kernel.entries)


class TestDiscreteEnsembleKernels:
    def test_first_entry(self, laguerre_kernel):
        """
        Test that DL+(rho; 1) has K(0, 0) = exp(-rho)
        """
        assert laguerre_kernel[0, 0] == pytest.approx(math.exp(-2.0), abs=1e-12)

    @pytest.mark.parametrize("spec", ENSEMBLES)
    def test_contraction(self, spec):
        """
        Test that the kernels are symmetric contractions
        """
        K = kernel_matrix(spec, 12)
        eigenvalues = np.linalg.eigvalsh(K.entries)
        assert np.allclose(K.entries, K.entries.T)
        assert eigenvalues.min() > -1e-10 and eigenvalues.max() < 1 + 1e-10

    @pytest.mark.parametrize("spec", ENSEMBLES)
    def test_complementarity(self, spec):
        """
        Test that the kernels of both signs add up to the identity
        """
        K = kernel_matrix(spec, 12)
        complement = kernel_matrix(spec.complement(), 12)
        assert np.allclose(K.entries + complement.entries, np.eye(13), atol=1e-10)

    @pytest.mark.parametrize("spec", ENSEMBLES)
    def test_integrable_form(self, spec):
        """
        Test that the closed integrable form matches the quadrature form off the diagonal
        """
        K = kernel_matrix(spec, 6)
        for x in range(7):
            for y in range(7):
                if x != y:
                    assert discrete_kernel_integrable(spec, x, y) == pytest.approx(K[x, y], abs=1e-9)

    def test_quadrature_entry(self, laguerre_plus, laguerre_kernel):
        """
        Test that single entries agree with the window computation
        """
        assert discrete_kernel_quadrature(laguerre_plus, 3, 1) == pytest.approx(laguerre_kernel[3, 1], abs=1e-12)

    def test_invalid_points(self, laguerre_plus):
        """
        Test that the integrable form is undefined on the diagonal and off Z>=0
        """
        with pytest.raises(DomainError):
            discrete_kernel_integrable(laguerre_plus, 2, 2)
        with pytest.raises(DomainError):
            discrete_kernel_integrable(laguerre_plus, -1, 2)
        with pytest.raises(ParameterError):
            kernel_matrix(laguerre_plus, -1)

    def test_cut_at_left_end(self):
        """
        Test that a cut point at the left end of the support gives the fully packed plus ensemble
        """
        K = kernel_matrix(DiscreteEnsembleSpec.dl(0.0, 2.0), 4)
        assert np.allclose(K.entries, np.eye(5))


class TestGramMatrices:
    @pytest.mark.parametrize(
        "family",
        [FamilySpec.hermite(), FamilySpec.laguerre(0.5), FamilySpec.laguerre(2.5), FamilySpec.jacobi(-0.5, 0.7)],
    )
    def test_full_support(self, family):
        """
        Test that the Gram matrix over the whole support is the identity
        """
        lo, hi = family.interval
        assert np.allclose(interval_gram(family, lo, hi, 6), np.eye(7), atol=1e-10)

    def test_empty_interval(self):
        """
        Test that an empty interval has a zero Gram matrix
        """
        assert not np.any(interval_gram(FamilySpec.laguerre(1.0), 1.0, 1.0, 3))

    def test_outside_support(self):
        """
        Test that the interval must lie inside the support
        """
        with pytest.raises(DomainError):
            interval_gram(FamilySpec.jacobi(0.0, 0.0), -2.0, 0.0, 3)
        with pytest.raises(ParameterError):
            interval_gram(FamilySpec.charlier(1.0), 0.0, 1.0, 3)


class TestChristoffelDarboux:
    def test_projection_against_gram_schmidt(self, krawtchouk, projection_kernel):
        """
        Test that the spectral projection matches the kernel built from orthonormalized monomials
        """
        assert np.allclose(projection_kernel.entries, finite_cd_kernel(krawtchouk, 3), atol=1e-10)

    @pytest.mark.parametrize(
        ("spec", "N"),
        [
            (FamilySpec.hahn(1.0, 2.0, 8), 4),
            (FamilySpec.meixner(2.0, 0.3), 3),
            (FamilySpec.charlier(4.0), 5),
            (FamilySpec.meixner(1.5, 0.9), 10),
        ],
    )
    def test_projection_against_direct_sum(self, spec, N):
        """
        Test that the spectral projection matches the sum of the Lanczos orthonormal functions
        """
        K = cd_kernel_matrix(spec, N, 8)
        for x, y in ((0, 0), (2, 5), (8, 3)):
            assert K[x, y] == pytest.approx(cd_kernel_direct(spec, N, x, y), abs=1e-10)

    def test_meixner_against_hypergeometric(self):
        """
        Test the Meixner kernel with a heavy weight against the hypergeometric polynomials
        """
        K = cd_kernel_matrix(FamilySpec.meixner(1.5, 0.9), 10, 7)
        assert np.allclose(K.entries, meixner_cd_kernel(1.5, 0.9, 10, 8), atol=1e-10)
        assert cd_kernel_direct(FamilySpec.meixner(1.5, 0.9), 10, 3, 3) == pytest.approx(K[3, 3], abs=1e-10)

    def test_rank(self, projection_kernel):
        """
        Test that the kernel is a rank 3 projection
        """
        assert np.allclose(projection_kernel.entries @ projection_kernel.entries, projection_kernel.entries, atol=1e-10)
        assert np.trace(projection_kernel.entries) == pytest.approx(3.0, abs=1e-10)

    def test_continuous_density(self):
        """
        Test that the Hermite density K_N(t, t) integrates to N
        """
        integral, _ = quad(lambda t: cd_kernel(FamilySpec.hermite(), 4, t, t), -np.inf, np.inf)
        assert integral == pytest.approx(4.0, rel=1e-9)

    def test_direct_outside_support(self, krawtchouk):
        """
        Test that direct summation refuses sites beyond a finite support
        """
        with pytest.raises(DomainError):
            cd_kernel_direct(krawtchouk, 2, 7, 0)


class TestAiry:
    def test_airy_function(self):
        """
        Test Ai(0) and Ai'(0)
        """
        ai, aip = airy_function(0.0)
        assert ai == pytest.approx(0.3550280538878172, rel=1e-14)
        assert aip == pytest.approx(-0.2588194037928068, rel=1e-14)

    def test_diagonal(self):
        """
        Test that the kernel is continuous across its diagonal
        """
        for x in (-3.0, 0.0, 1.5):
            ai, aip = airy_function(x)
            assert airy_kernel(x, x) == pytest.approx(aip**2 - x * ai**2, rel=1e-12)
            assert airy_kernel(x, x + 1e-4) == pytest.approx(airy_kernel(x, x), abs=1e-4)

    def test_symmetric(self):
        """
        Test that the kernel is symmetric and broadcasts
        """
        x = np.array([-1.0, 0.5, 2.0])
        values = airy_kernel(x[:, None], x[None, :])
        assert values.shape == (3, 3)
        assert np.allclose(values, values.T)
