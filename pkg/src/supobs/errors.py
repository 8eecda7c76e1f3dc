"""Exception types shared across the package."""


class SupobsError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(SupobsError, ValueError):
    """Operands live over incompatible alphabets, or an event is unknown."""


class ValidationError(SupobsError, ValueError):
    """A precondition on the operand languages does not hold (e.g. K not a subset of C)."""


class ParseError(SupobsError, ValueError):
    """A model file could not be parsed."""


class IterationLimitError(SupobsError, RuntimeError):
    """A fixpoint iteration exceeded its safety cap.

    For regular inputs the iterations are guaranteed to terminate, so hitting
    the cap points at a bug rather than at a hard instance.
    """


class OracleLimitError(SupobsError, ValueError):
    """A brute-force enumeration was asked to handle an instance above its size cap."""
