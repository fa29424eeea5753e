"""Exact computations linking theta divisors, permutohedra and Tomei manifolds."""

from .errors import (
    DegenerateHeightError,
    EnumerationLimitError,
    FormulaViolationError,
    InexactDivisionError,
    IntegralityError,
    InternalError,
    PreconditionError,
    ThetapermError,
    TruncationError,
)
from .polyring import MPoly, TLaurent, XSeries, theta, var

__version__ = "0.1.0"
