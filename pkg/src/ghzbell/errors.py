class DomainError(ValueError):
    """Invalid argument: bad size, index out of range, non-orthonormal basis, ..."""


class ProtocolError(RuntimeError):
    """A protocol step could not complete, e.g. the state leaves the span of a measurement basis."""
