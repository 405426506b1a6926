"""Exception types shared across the library."""


class EquicycleError(Exception):
    """Base class for all library-specific errors."""


class InadmissibleParameters(EquicycleError):
    """Parameters violate an analysis precondition (|s2| <= 1 or p2 = 0)."""


class DegenerateDenominator(EquicycleError):
    """Both angular charts for the equilibrium angles degenerate at once."""


class UnresolvedClassification(EquicycleError):
    """Both Jacobian eigenvalues are numerically zero; the type is undecidable."""


class DegenerateInfinity(EquicycleError):
    """s1 = 0 with |s2| > 1: the stability integral at infinity vanishes."""


class OnCriticalSet(EquicycleError):
    """The point lies on the curve where the angular speed vanishes."""


class AtInfinity(EquicycleError):
    """The Abel variable sits on the image of infinity, x = 1/c(theta)."""


class BlowUp(EquicycleError):
    """A trajectory left the integration domain before the final time."""


class OpenCurve(EquicycleError):
    """Polygon samples do not close up within tolerance."""


class PreconditionNotMet(EquicycleError):
    """A hypothesis required by the requested check does not hold."""
