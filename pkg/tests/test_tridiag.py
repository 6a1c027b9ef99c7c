import math

import numpy as np
import pytest

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.exceptions import ParameterError
from py_ensembles.orthopoly import FamilySpec, truncated_support
from py_ensembles.tridiag import (
    TridiagMatrix,
    airy_operator,
    apply_scaled_operator,
    build_limit_jacobi,
    build_prelimit_jacobi,
    default_scale,
    divergence_check,
    eigen_sym_tridiag,
    prelimit_kernel_block,
    prelimit_threshold,
    projection_block,
    scaled_lattice_point,
    spectral_projection_plus,
)
from tests.oracles import finite_cd_kernel, meixner_cd_kernel


def bump(v: float) -> float:
    return math.exp(-0.5 * v * v)


def bump_second(v: float) -> float:
    return (v * v - 1) * math.exp(-0.5 * v * v)


class TestTridiagMatrix:
    def test_finite(self):
        """
        Test that a finite matrix is assembled from its entries
        """
        m = TridiagMatrix.finite([1.0, 2.0, 3.0], [0.5, 0.25])
        assert m.size == 3
        assert np.array_equal(m.dense(3), [[1.0, 0.5, 0.0], [0.5, 2.0, 0.25], [0.0, 0.25, 3.0]])
        assert np.array_equal(m.scaled(2.0).dense(2), [[2.0, 1.0], [1.0, 4.0]])

    @pytest.mark.parametrize(
        ("diagonal", "off_diagonal"),
        [
            # Off-diagonal too short
            ([1.0, 2.0, 3.0], [0.5]),
        ],
    )
    def test_invalid_finite(self, diagonal, off_diagonal):
        """
        Test that the off-diagonal must have one entry less than the diagonal
        """
        with pytest.raises(ParameterError):
            TridiagMatrix.finite(diagonal, off_diagonal)

    def test_truncation_checks(self):
        """
        Test that truncations need a valid size and a nonnegative off-diagonal
        """
        m = TridiagMatrix.finite([0.0, 0.0], [-1.0])
        with pytest.raises(ParameterError):
            m.truncation(2)
        with pytest.raises(ParameterError):
            m.truncation(3)
        with pytest.raises(ParameterError):
            m.truncation(0)
        with pytest.raises(ParameterError):
            m.scaled(0.0)

    def test_eigendecomposition(self):
        """
        Test the tridiagonal eigensolver against a dense one
        """
        m = build_limit_jacobi(DiscreteEnsembleSpec.dl(3.0, 1.5))
        eigenvalues, vectors = eigen_sym_tridiag(m, 40)
        dense = m.dense(40)
        assert np.allclose(eigenvalues, np.linalg.eigvalsh(dense), atol=1e-10)
        assert np.allclose(dense @ vectors, vectors * eigenvalues, atol=1e-9)


class TestLimitJacobi:
    def test_hermite_entries(self):
        """
        Test that DH+-(rho) has diagonal +-(0 - rho) and off-diagonal sqrt((x+1)/2)
        """
        plus = build_limit_jacobi(DiscreteEnsembleSpec.dh(1.5))
        minus = build_limit_jacobi(DiscreteEnsembleSpec.dh(1.5, "-"))
        assert np.allclose(plus.diagonal(4), -1.5)
        assert np.allclose(minus.diagonal(4), 1.5)
        assert np.allclose(plus.off_diagonal(3), np.sqrt([0.5, 1.0, 1.5]))
        assert np.array_equal(plus.off_diagonal(3), minus.off_diagonal(3))
        assert plus.size is None

    def test_divergence(self):
        """
        Test that the Hermite off-diagonal grows slowly enough for essential self-adjointness
        """
        m = build_limit_jacobi(DiscreteEnsembleSpec.dh(0.0))
        assert divergence_check(m, 500) == pytest.approx(math.sqrt(0.5))

    def test_projection_is_projection(self):
        """
        Test that the positive-spectrum projection is an orthogonal projection of the right rank
        """
        m = build_limit_jacobi(DiscreteEnsembleSpec.dl(4.0, 2.0))
        projection = spectral_projection_plus(m, 60)
        P = projection.matrix
        assert projection.window == 60 and projection.threshold == 0.0
        assert np.allclose(P @ P, P, atol=1e-10)
        assert np.trace(P) == pytest.approx(np.sum(np.linalg.eigvalsh(m.dense(60)) > 0), abs=1e-8)

    def test_projection_block(self):
        """
        Test that the block computed from the selected eigenvectors matches the full projection
        """
        m = build_limit_jacobi(DiscreteEnsembleSpec.dj(0.3, 1.0, 0.5, "-"))
        full = spectral_projection_plus(m, 80).matrix[:10, :10]
        assert np.allclose(projection_block(m, 80, 10), full, atol=1e-10)
        with pytest.raises(ParameterError):
            projection_block(m, 5, 10)


class TestPrelimitJacobi:
    @pytest.mark.parametrize(
        ("spec", "expected"),
        [
            (FamilySpec.charlier(2.0), math.sqrt(8.0)),
            (FamilySpec.meixner(2.0, 0.5), 1.0),
            (FamilySpec.krawtchouk(0.5, 8), math.sqrt(8.0)),
            (FamilySpec.hahn(1.0, 1.0, 8), 8.0),
            (FamilySpec.racah(1.0, 1.0, 8), 32.0),
        ],
    )
    def test_default_scale(self, spec, expected):
        """
        Test the default normalizations c_N at N = 4
        """
        assert default_scale(spec, 4) == pytest.approx(expected)

    def test_kernel_against_gram_schmidt(self, krawtchouk):
        """
        Test that [A_N]_+ is the Christoffel-Darboux kernel
        """
        block = prelimit_kernel_block(krawtchouk, 4, 7)
        assert np.allclose(block, finite_cd_kernel(krawtchouk, 4), atol=1e-10)

    def test_spectrum(self, krawtchouk):
        """
        Test that A_N has the eigenvalues (mu_N - mu_n) / c_N on a finite support
        """
        c = default_scale(krawtchouk, 3)
        eigenvalues, _ = eigen_sym_tridiag(build_prelimit_jacobi(krawtchouk, 3), 7)
        assert np.allclose(np.sort(eigenvalues), np.sort((3 - np.arange(7)) / c), atol=1e-10)
        assert prelimit_threshold(krawtchouk, 3) == pytest.approx(0.5 / c)

    def test_meixner_kernel_far_from_origin(self):
        """
        Test the Meixner kernel against the hypergeometric polynomials when the particles reach far beyond the
        bulk of the weight
        """
        block = prelimit_kernel_block(FamilySpec.meixner(1.5, 0.9), 10, 8)
        assert np.allclose(block, meixner_cd_kernel(1.5, 0.9, 10, 8), atol=1e-10)

    def test_truncated_spectrum(self):
        """
        Test that A_N truncated where the first N orthonormal functions vanish keeps the eigenvalues (mu_N - mu_n)
        """
        spec = FamilySpec.meixner(1.5, 0.9)
        size = truncated_support(spec, 9).nodes.size
        eigenvalues, _ = eigen_sym_tridiag(build_prelimit_jacobi(spec, 10), size)
        assert np.allclose(eigenvalues[-10:], 0.1 * np.arange(1, 11), atol=1e-9)
        assert eigenvalues[-11] < 0.05

    def test_kernel_against_truncated_projection(self):
        """
        Test the recurrence kernel against the projection of A_N truncated for degree N - 1
        """
        spec = FamilySpec.meixner(1.0, 0.95)
        size = truncated_support(spec, 59).nodes.size
        projection = projection_block(build_prelimit_jacobi(spec, 60), size, 8, prelimit_threshold(spec, 60))
        assert np.allclose(prelimit_kernel_block(spec, 60, 8), projection, atol=1e-9)

    def test_window_beyond_support(self, krawtchouk):
        """
        Test that a window larger than a finite support is padded with zeros
        """
        block = prelimit_kernel_block(krawtchouk, 2, 10)
        assert block.shape == (10, 10)
        assert not np.any(block[7:]) and not np.any(block[:, 7:])

    def test_particle_number(self, krawtchouk):
        """
        Test that a finite support holds between 1 and M+1 particles
        """
        with pytest.raises(ParameterError):
            build_prelimit_jacobi(krawtchouk, 8)
        with pytest.raises(ParameterError):
            build_prelimit_jacobi(krawtchouk, 0)
        with pytest.raises(ParameterError):
            build_prelimit_jacobi(krawtchouk, 2, -1.0)


class TestEdgeScaling:
    def test_lattice_point(self):
        """
        Test that the lattice point is the nearest one to sigma - tau v
        """
        spec = DiscreteEnsembleSpec.dh(20.0)
        x, v_eff = scaled_lattice_point(spec, 1.0)
        tau = 200.0 ** (1 / 3)
        assert x == round(200.0 - tau)
        assert abs(v_eff - 1.0) <= 0.5 / tau

    @pytest.mark.parametrize("base", ["DH", "DL"])
    def test_airy_operator_limit(self, base):
        """
        Test that the scaled difference operator approaches g'' - v g as the edge moves out
        """
        if base == "DH":
            specs = [DiscreteEnsembleSpec.dh(rho) for rho in (20.0, 200.0)]
        else:
            specs = [DiscreteEnsembleSpec.dl(rho, rho / 4) for rho in (100.0, 10000.0)]
        errors = []
        for spec in specs:
            worst = 0.0
            for v in np.linspace(-2, 2, 9):
                _, v_eff = scaled_lattice_point(spec, float(v))
                action = apply_scaled_operator(spec, bump, float(v))
                worst = max(worst, abs(action - airy_operator(bump, bump_second, v_eff)))
            errors.append(worst)
        assert errors[1] < errors[0]
