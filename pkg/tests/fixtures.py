import pytest

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.kernels import KernelMatrix, cd_kernel_matrix, kernel_matrix
from py_ensembles.orthopoly import FamilySpec


@pytest.fixture
def laguerre_plus() -> DiscreteEnsembleSpec:
    """
    Create the discrete Laguerre ensemble DL+(2; 1)
    """
    return DiscreteEnsembleSpec.dl(2.0, 1.0)


@pytest.fixture
def hermite_minus() -> DiscreteEnsembleSpec:
    """
    Create the discrete Hermite ensemble DH-(0.5)
    """
    return DiscreteEnsembleSpec.dh(0.5, "-")


@pytest.fixture
def jacobi_plus() -> DiscreteEnsembleSpec:
    """
    Create the discrete Jacobi ensemble DJ+(0.2; 1, 0.5)
    """
    return DiscreteEnsembleSpec.dj(0.2, 1.0, 0.5)


@pytest.fixture
def krawtchouk() -> FamilySpec:
    """
    Create a Krawtchouk family on {0..6}
    """
    return FamilySpec.krawtchouk(0.4, 6)


@pytest.fixture
def projection_kernel(krawtchouk) -> KernelMatrix:
    """
    Create the rank 3 Krawtchouk Christoffel-Darboux kernel on its whole support
    """
    return cd_kernel_matrix(krawtchouk, 3, 6)


@pytest.fixture
def laguerre_kernel(laguerre_plus) -> KernelMatrix:
    """
    Create the DL+(2; 1) kernel on {0..5}
    """
    return kernel_matrix(laguerre_plus, 5)
