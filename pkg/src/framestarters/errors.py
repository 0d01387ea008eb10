"""Exception types shared across the package."""


class FrameStarterError(Exception):
    """Base class for every error raised by this package."""


class StructureError(FrameStarterError):
    """Malformed or mismatched group/element/starter structure."""


class InvalidTypeError(FrameStarterError):
    """A starter type (h, u) the requested operation cannot accept."""


class UnsupportedOperationError(FrameStarterError):
    """Operation undefined for this group (e.g. halving in even order)."""


class InvalidHomomorphismError(FrameStarterError):
    """Requested reduction modulus does not induce a homomorphism."""


class NotComparableError(FrameStarterError):
    """Two starters whose difference patterns cannot be aligned."""


class SchemaError(FrameStarterError):
    """JSON input that does not match the documented schemas."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
