"""Exception hierarchy.  The CLI maps UsageError to exit 2 and DomainError to exit 1."""


class CensusError(Exception):
    pass


class UsageError(CensusError, ValueError):
    """Malformed input or a violated precondition."""


class DomainError(CensusError, ArithmeticError):
    """Well-formed input the mathematics refuses (degenerate expansions, singular forms)."""


class BoundExceeded(DomainError):
    """A bounded search ran out of budget before reaching a verdict."""
