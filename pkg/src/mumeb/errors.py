"""Exception types shared across the package."""


class MumebError(Exception):
    """Base class for all package-specific errors."""


class NonPrime(MumebError):
    """A component characteristic failed the primality check."""


class BadSpec(MumebError):
    """A ring specification violates its structural invariants."""


class ShapeMismatch(MumebError):
    """An element does not match the shape of the ring it was used with."""


class NotAUnit(MumebError):
    """An operation required an invertible element and got a non-unit."""


class NonGenericCharacter(MumebError):
    """Basis construction requires the ring character to be generic."""


class TheoremNotApplicable(MumebError):
    """The field-based family construction needs min component size >= 3."""


class TooSmall(MumebError):
    """A family construction produced an empty set of bases."""


class DimensionMismatch(MumebError):
    """Two states or bases of different dimension were combined."""


class ParseError(MumebError):
    """A family file is structurally invalid."""


class NodeLimitExceeded(MumebError):
    """Clique search ran out of branch nodes.

    Carries the best clique found so far (as vertex indices) so callers
    can still report a lower bound.
    """

    def __init__(self, message: str, best: list[int]):
        super().__init__(message)
        self.best = best
