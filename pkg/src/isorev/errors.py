"""Exception types shared across the toolkit."""


class IsorevError(Exception):
    """Base class for all toolkit errors."""


class DegenerateImmersionError(IsorevError):
    """The surface map fails the immersion condition |f_u x f_v| > 0."""


class SingularMetricError(IsorevError):
    """First fundamental form is not positive definite."""


class UmbilicSampleError(IsorevError):
    """A twist-fit probe landed on an umbilic point."""


class UnwrapAmbiguityError(IsorevError):
    """Consecutive principal-angle samples are too far apart to unwrap."""


class PlaneDegeneracyError(IsorevError):
    """b = 0 makes the surface a plane; the minimal family excludes it."""


class UnknownPresetError(IsorevError, KeyError):
    """Requested preset name is not registered."""


class NonpositiveInitialRhoError(IsorevError):
    """ODE initial data must have rho > 0."""


class RadicandError(IsorevError):
    """c^2 rho^2 - rho'^2 <= 0: no surface of revolution with this speed-up."""

    def __init__(self, msg, u=None):
        super().__init__(msg)
        self.u = u


class ConfigError(IsorevError):
    """Invalid job configuration."""
