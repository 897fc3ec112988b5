"""Exception hierarchy shared by all modules."""


class BlaschkeError(ValueError):
    """Base class for invalid input to the curve machinery."""


class DomainError(BlaschkeError):
    """A zero, parameter or boundary value lies outside its allowed domain."""


class PoleError(BlaschkeError):
    """Evaluation point is too close to a pole of the product."""


class HermitianError(BlaschkeError):
    """A bivariate polynomial expected to be real-valued is not Hermitian."""


class DegreeError(BlaschkeError):
    """Polynomial or product degree is not supported by the operation."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap."""

    def __init__(self, message, worst_residual=None):
        super().__init__(message)
        self.worst_residual = worst_residual


class BranchTrackingError(RuntimeError):
    """Preimage branches could not be matched between consecutive angles.

    Usually means the angle grid is too coarse.
    """


class ConsistencyError(RuntimeError):
    """An internal numerical self-check failed."""
