"""Exception types raised across the coloring pipeline."""

from __future__ import annotations


class HypergraphFormatError(ValueError):
    """Malformed hypergraph text input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParameterError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class ColoringError(RuntimeError):
    pass


class CapExceeded(ColoringError):
    """A resampling, restart or retry budget ran out.

    ``diagnostics`` carries whatever the phase had left over at the time
    (violated events, surviving pairs, failure tallies).
    """

    def __init__(self, message: str, diagnostics: object = None):
        super().__init__(message)
        self.diagnostics = diagnostics


class RebalanceError(ColoringError):
    pass


class VerificationError(ColoringError):
    """Pipeline output failed the independent verifier. Always a bug."""
