"""Exception hierarchy shared by all catgate modules."""


class CatGateError(Exception):
    """Base class for every error raised by catgate."""


class ParameterRangeError(CatGateError, ValueError):
    """Parameters are invalid or outside the range the kernels support."""


class AiryOverflowError(ParameterRangeError, OverflowError):
    """The Airy function (or a product with it) left the representable range."""


class QuadratureError(CatGateError, RuntimeError):
    """Adaptive quadrature ran out of subdivisions before meeting tolerance.

    Attributes
    ----------
    error_estimate : float
        Largest per-component error estimate when the budget ran out.
    worst_index : int or None
        Index of the integrand component with the largest error, for
        vector-valued integrands.
    """

    def __init__(self, message, error_estimate=float("nan"), worst_index=None):
        super().__init__(message)
        self.error_estimate = error_estimate
        self.worst_index = worst_index


class BranchError(CatGateError, ValueError):
    """The measurement line misses the resource curve: no semiclassical branch."""


class GridMismatchError(CatGateError, ValueError):
    """Two wavefunctions were sampled on different coordinate grids."""
