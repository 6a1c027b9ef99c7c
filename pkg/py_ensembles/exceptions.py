"""
Exceptions and warnings raised by the package
"""

import warnings


class EnsembleWarnings:
    """
    Class wrapping all warnings raised by the numerical routines
    """

    @staticmethod
    def degenerate_threshold(eigenvalue: float) -> None:
        """
        Warning raised when a spectral projection finds an eigenvalue too close to its threshold

        :param eigenvalue: Offending eigenvalue
        """

        warn_message = f"DEGENERATE THRESHOLD: eigenvalue {eigenvalue:.3e} assigned to the positive side"
        warnings.warn(warn_message, UserWarning, stacklevel=3)

    @staticmethod
    def truncated_mass(mass: float, message: str) -> None:
        """
        Warning raised when a computation drops a non-negligible amount of probability mass

        :param mass: Dropped mass
        :param message: Message to display
        """

        warn_message = f"TRUNCATED MASS {mass:.3e}: {message}"
        warnings.warn(warn_message, UserWarning, stacklevel=3)

    @staticmethod
    def clamped_eigenvalue(eigenvalue: float) -> None:
        """
        Warning raised when a kernel eigenvalue is clamped into [0, 1] before sampling

        :param eigenvalue: Clamped eigenvalue
        """

        warn_message = f"CLAMPED EIGENVALUE {eigenvalue:.3e}: kernel is not a contraction to working precision"
        warnings.warn(warn_message, UserWarning, stacklevel=3)


class ParameterError(ValueError):
    """Exception raised when a family, ensemble or model parameter is out of range

    Attributes:
        parameter: Name of the offending parameter
        message: Explanation of the exception (optional)
    """

    def __init__(self, parameter: str, message: str = "Parameter out of range") -> None:
        self.parameter = parameter
        self.message = message
        super().__init__(f"{self.parameter}: {self.message}")


class DomainError(ValueError):
    """Exception raised when a function is evaluated outside of its domain

    Attributes:
        point: Offending point
        message: Explanation of the exception (optional)
    """

    def __init__(self, point: object, message: str = "Point outside of the domain") -> None:
        self.point = point
        self.message = message
        super().__init__(f"{self.message} (at {self.point!r})")


class AccuracyError(Exception):
    """Exception raised when a quadrature, truncation or refinement cannot reach the requested accuracy

    Attributes:
        achieved: Best error estimate reached (optional)
        message: Explanation of the exception (optional)
    """

    def __init__(self, achieved: float = None, message: str = "Requested accuracy not reached") -> None:
        self.achieved = float("nan") if achieved is None else achieved
        self.message = message
        super().__init__(f"{self.message} (achieved {self.achieved:.3e})")


class ConvergenceError(Exception):
    """Exception raised when an iterative solver does not converge

    Attributes:
        iterations: Iterations performed (optional)
        message: Explanation of the exception (optional)
    """

    def __init__(self, iterations: int = None, message: str = "Iteration did not converge") -> None:
        self.iterations = iterations
        self.message = message
        super().__init__(self.message)


class KernelValidityError(Exception):
    """Exception raised when a kernel cannot define a determinantal point process

    Attributes:
        eigenvalue: Eigenvalue outside of [0, 1]
        message: Explanation of the exception (optional)
    """

    def __init__(self, eigenvalue: float, message: str = "Kernel eigenvalue outside of [0, 1]") -> None:
        self.eigenvalue = eigenvalue
        self.message = message
        super().__init__(f"{self.message}: {self.eigenvalue!r}")


class WindowOverflowError(Exception):
    """Exception raised when a simulation reaches the edge of its finite window

    Attributes:
        site: Site where the overflow was detected
        message: Explanation of the exception (optional)
    """

    def __init__(
        self, site: int, message: str = "Simulation reached the window edge, re-run with a larger window"
    ) -> None:
        self.site = site
        self.message = message
        super().__init__(f"{self.message} (site {self.site})")
