"""Exception hierarchy shared by every weilss module."""


class WeilssError(Exception):
    """Base class for all library errors."""


class NotPrime(WeilssError, ValueError):
    pass


class FieldTooLarge(WeilssError, ValueError):
    pass


class DivisionByZero(WeilssError, ZeroDivisionError):
    pass


class ZeroArgument(WeilssError, ValueError):
    pass


class FieldMismatch(WeilssError, ValueError):
    pass


class ConductorMismatch(WeilssError, ValueError):
    pass


class NotAMultiple(WeilssError, ValueError):
    pass


class NotAUnit(WeilssError, ValueError):
    pass


class InvalidAction(WeilssError, ValueError):
    pass


class NotCoprime(WeilssError, ValueError):
    pass


class ZeroLeadingCoefficient(WeilssError, ValueError):
    pass


class NonIntegralLPolynomial(WeilssError, ArithmeticError):
    """Newton's identities produced a non-integer; a genus or count bug."""


class InternalDisagreement(WeilssError, AssertionError):
    """Two independent supersingularity tests disagreed (always a bug)."""


class UnsupportedFamily(WeilssError, ValueError):
    pass


class NoClosedForm(WeilssError, ValueError):
    pass


class CorruptCache(WeilssError, RuntimeError):
    pass


class TheoremContradiction(WeilssError, RuntimeError):
    """A proven implication was contradicted by a computed verdict."""


class CacheConflict(WeilssError, RuntimeError):
    """A cache key was written twice with different values."""
