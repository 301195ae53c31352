"""Exception types shared across the package."""


class RotnumError(Exception):
    """Base class for all library errors."""


class FamilyValidationError(RotnumError):
    """Family definition violates a structural constraint."""


class HomeomorphismError(FamilyValidationError):
    """Family evaluated outside its homeomorphism window."""


class AliasingError(RotnumError):
    """Spectral analysis requested with too few samples."""


class ProgressError(RotnumError):
    """Crossing estimator found no forward progress (near mode locking)."""


class IterationCapError(RotnumError):
    """Crossing estimator exceeded its iteration budget."""


class SensitivityError(RotnumError):
    """Parameter sensitivity is non-positive where positivity is required."""


class VelocityError(RotnumError):
    """Velocity field vanishes or changes sign on the unit interval."""


class MonotonicityError(RotnumError):
    """First-order monotonicity fails; the piecewise-linear slope formula is inapplicable."""


class BreakCollisionError(RotnumError):
    """Distinct break-point orbits collide within the deduplication tolerance."""
