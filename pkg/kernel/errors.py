"""
Exception hierarchy shared by every package.

Negative verdicts (not IC, not a postprocessing, ...) are returned as values.
These exceptions are reserved for malformed input and violated preconditions.
"""


class EffectAlgebraError(ValueError):
    """Base class for all input / precondition errors."""


class DimensionError(EffectAlgebraError):
    """Shapes or sizes do not line up."""


class NotHermitianError(EffectAlgebraError):
    """Matrix fails the conjugate-symmetry check."""


class NotAnEffectError(EffectAlgebraError):
    """Payload lies outside the interval [0, u]."""


class NotAStateError(EffectAlgebraError):
    """Payload is not a probability vector / density matrix."""


class AlgebraMismatchError(EffectAlgebraError):
    """Operands live in different base algebras."""


class NotASubalgebraError(EffectAlgebraError):
    """Generator data does not define a convex subeffect algebra."""


class NotAnObservableError(EffectAlgebraError):
    """Effects do not sum to the unit."""


class ChannelError(EffectAlgebraError):
    """Matrix is not row-stochastic or its indices do not match."""


class HypothesisError(EffectAlgebraError):
    """An operation's hypothesis is violated by the input."""


class DecompositionError(EffectAlgebraError):
    """A spectral construction failed its own verification."""


class DocumentError(EffectAlgebraError):
    """Input document could not be parsed. `location` names the offending path."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
