"""Custom exceptions for the spectra library."""


class ScreeningException(Exception):
    """Base exception for the spectra library."""
    pass


class EigenSolverError(ScreeningException):
    """Eigenvalue iteration failed to converge."""
    pass


class NotPositiveDefiniteError(ScreeningException):
    """Metric matrix failed its Cholesky factorization."""

    def __init__(self, pivot: int):
        self.pivot = pivot
        super().__init__(f"Matrix is not positive definite: leading minor of order {pivot} failed")


class ConvergenceError(ScreeningException):
    """Iterative procedure exhausted its budget."""
    pass


class CapabilityError(ScreeningException):
    """Envelope cannot be evaluated at complex arguments."""
    pass


class KinematicsModeError(ScreeningException):
    """Operation is not defined in the requested kinematics mode."""
    pass


class SingularPointError(ScreeningException):
    """Energy sits on a singular point of the kinematic map or of the recursion."""
    pass


class HarrisPoleError(ScreeningException):
    """Energy coincides with an eigenvalue of the finite problem."""

    def __init__(self, energy: complex, eigenvalue: float):
        self.energy = energy
        self.eigenvalue = eigenvalue
        super().__init__(
            f"E={energy} is a pole of the finite resolvent (Harris eigenvalue {eigenvalue:.15g}); "
            f"shift the evaluation point"
        )


class BracketingError(ScreeningException):
    """A bracket required by a bisection does not enclose a transition."""

    def __init__(self, message: str, trace: list | None = None):
        self.trace = trace or []
        super().__init__(message)


class ConfigError(ScreeningException):
    """Run configuration is invalid."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
