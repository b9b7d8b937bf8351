"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A physics or numerics parameter is invalid (names the offending field)."""


class ResolutionError(ValueError):
    """The time grid cannot resolve the requested frequency content."""


class TruncationError(ValueError):
    """A Fock-space truncation is too small for the requested state."""

    def __init__(self, message, suggested_n_max=None):
        super().__init__(message)
        self.suggested_n_max = suggested_n_max


class AliasingError(ValueError):
    """Discrete phase average would alias; carries the smallest admissible n_phi."""

    def __init__(self, message, min_n_phi=None):
        super().__init__(message)
        self.min_n_phi = min_n_phi


class UnsupportedEnvelopeError(ValueError):
    """Operation requires a Flat (periodic) envelope."""


class InsufficientScanError(ValueError):
    """A parameter scan needs more sample points than were supplied."""


class SchemaError(ValueError):
    """A CSV/JSON artifact does not match its documented schema."""
