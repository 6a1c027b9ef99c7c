import pytest  # noqa: F401

from tests.fixtures import (  # noqa: F401
    hermite_minus, jacobi_plus, krawtchouk, laguerre_kernel, laguerre_plus, projection_kernel
)
