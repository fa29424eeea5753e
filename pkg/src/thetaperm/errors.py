"""Exception hierarchy.

Each family maps onto one CLI exit code: identity violations exit 2,
precondition/cap errors exit 3, internal arithmetic failures exit 4.
"""

from __future__ import annotations


class ThetapermError(Exception):
    exit_code = 1


class PreconditionError(ThetapermError, ValueError):
    exit_code = 3


class EnumerationLimitError(PreconditionError):
    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: n={n} exceeds enumeration cap {cap}")
        self.n = n
        self.cap = cap


class DegenerateHeightError(PreconditionError):
    pass


class FormulaViolationError(ThetapermError):
    """An identity that must hold did not."""

    exit_code = 2


class InternalError(ThetapermError, ArithmeticError):
    exit_code = 4


class InexactDivisionError(InternalError):
    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class IntegralityError(InternalError):
    pass


class TruncationError(InternalError):
    pass
