"""Error types raised by the numerical layers."""


class EnclosureError(Exception):
    """Base class for numeric failures reported by the library."""


class PoleEvaluation(EnclosureError):
    """Raised when a rational quantity is evaluated at one of the poles."""


class ConvergenceFailure(EnclosureError):
    """Raised when a root polish cannot meet its residual target."""


class OnDiskBoundary(EnclosureError):
    """Raised when an inverse map is evaluated on the boundary of the disk D."""


class OddPairing(EnclosureError):
    """Raised when the odd-multiplicity axis points cannot be paired."""


class VerificationFailure(EnclosureError):
    """Raised when no candidate strip passes the curve scan."""


class DegenerateConfiguration(EnclosureError):
    """Raised when a threshold comparison falls inside the guard band."""
