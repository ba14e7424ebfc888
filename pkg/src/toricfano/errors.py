"""Exception hierarchy shared by all modules."""


class FanoError(Exception):
    """Base class for every error raised by toricfano."""


class DimensionError(FanoError, ValueError):
    """Input has the wrong shape or is not full-dimensional."""


class DomainError(FanoError, ValueError):
    """Argument outside the domain of the operation (zero vector, non-primitive vector)."""


class RankError(FanoError, ValueError):
    """Matrix does not have the required rank."""


class DegeneracyError(FanoError, ValueError):
    """Kernel dimension differs from the one the operation needs."""


class InteriorityError(FanoError, ValueError):
    """The origin is not strictly inside the convex hull."""


class ReflexivityError(FanoError, ValueError):
    """A reflexive polytope was required."""


class UnsupportedDimensionError(FanoError, ValueError):
    """The requested dimension is not handled by this code path."""


class ParseError(FanoError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(FanoError, ValueError):
    """A parsed block does not describe a valid polytope."""


class InvariantError(FanoError, AssertionError):
    """A proven structural statement failed; this always indicates a bug."""
