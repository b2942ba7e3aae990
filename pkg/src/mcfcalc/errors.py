"""Exception hierarchy shared by every module of the package."""


class McfError(Exception):
    """Base class for all errors raised by :mod:`mcfcalc`."""


class InsufficientPrecision(McfError):
    """A coefficient was requested at or beyond the known precision."""


class NotInvertible(McfError):
    """The leading coefficient of a series is not a unit."""


class PositiveValuationRequired(McfError):
    """``exp`` was applied to a series whose valuation is not positive."""


class InconsistentODE(McfError):
    """The right-hand side of the phi_{m,n} equation has a nonzero constant term.

    This indicates a bug in the series engine, not bad input.
    """


class MathContractError(McfError):
    """Base class for violations of an exponent or integrality contract."""


class NonIntegralExponent(MathContractError):
    pass


class NonIntegralPrefactor(MathContractError):
    pass


class NonIntegralSquare(MathContractError):
    pass


class MissingPrimitiveValue(McfError):
    """Primitive data needed by a multiple cover transform was not supplied."""


class WindowMismatch(McfError):
    """Known-coefficient windows of partition functions do not overlap."""
