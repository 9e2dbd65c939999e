"""Exception hierarchy shared by all modules."""


class FourVertexError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(FourVertexError, ValueError):
    """Invalid curve spec, tolerance or run configuration."""


class DegenerateCurveError(FourVertexError):
    """The curve is not regular (vanishing first derivative) at some parameter."""

    def __init__(self, t, message=None):
        self.t = float(t)
        super().__init__(message or f"curve is not regular at t={self.t!r}")


class CurvatureDegeneracyError(FourVertexError):
    """Curvature fell below the configured floor, so N, B and torsion are undefined."""

    def __init__(self, t, kappa, kappa_min):
        self.t = float(t)
        self.kappa = float(kappa)
        self.kappa_min = float(kappa_min)
        super().__init__(
            f"curvature {self.kappa:.3e} below floor {self.kappa_min:.1e} at t={self.t!r}"
        )


class HypothesisViolation(FourVertexError):
    """A geometric hypothesis required by an operation does not hold."""


class InvalidCenterError(HypothesisViolation):
    """The projection center lies on the curve."""


class PreconditionError(FourVertexError):
    """An operation was called on data that violates its stated precondition."""
