"""Generating series of genera and genus evaluation on θ-classes.

Every generating function here is assembled from :func:`exp_linear` and
exact series division; none of them consults the closed-form number tables
in :mod:`thetaperm.combinatorics`. That keeps the two sides of each identity
computed independently.

A genus is a ring homomorphism from the θ-class ring to polynomials, fixed by
its values on the generators ``θm`` (the class of the m-dimensional theta
divisor). Those values are read off the genus' exponential series: the
coefficient of ``x^{m+1}/(m+1)!`` is the genus of ``θm``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Callable

from .combinatorics import eulerian
from .errors import PreconditionError
from .polyring import MPoly, XSeries, bivariate_expand, exp_linear, var

DEFAULT_ORDER = 12


def _check_order(order: int):
    if order < 1:
        raise PreconditionError(f"series order must be >= 1, got {order}")


@lru_cache(maxsize=None)
def td_theta_gf(order: int = DEFAULT_ORDER) -> XSeries:
    """``(1 - e^{-bx}) / (b - t(1 - e^{-bx}))``: Todd genera of theta intersections."""
    _check_order(order)
    b, t = var("b"), var("t")
    one_minus = 1 - exp_linear(-b, order)
    return one_minus / (XSeries.constant(b, order) - t * one_minus)


@lru_cache(maxsize=None)
def f_gf(order: int = DEFAULT_ORDER) -> XSeries:
    """``(e^{sx} - 1) / (s - t(e^{sx} - 1))``: face numbers of all permutohedra."""
    _check_order(order)
    s, t = var("s"), var("t")
    e_minus = exp_linear(s, order) - 1
    return e_minus / (XSeries.constant(s, order) - t * e_minus)


@lru_cache(maxsize=None)
def h_gf(order: int = DEFAULT_ORDER) -> XSeries:
    """``(e^{sx} - e^{tx}) / (s e^{tx} - t e^{sx})``, the two-parameter Todd exponential."""
    _check_order(order)
    s, t = var("s"), var("t")
    es, et = exp_linear(s, order), exp_linear(t, order)
    return (es - et) / (s * et - t * es)


@lru_cache(maxsize=None)
def chi_y_gf(order: int = DEFAULT_ORDER) -> XSeries:
    """``(1 - e^{-x(1+y)}) / (1 + y e^{-x(1+y)})``."""
    _check_order(order)
    y = var("y")
    e = exp_linear(-(1 + y), order)
    return (1 - e) / (1 + y * e)


def gf_value(series: XSeries, n: int) -> MPoly:
    """Coefficient of ``x^{n+1}/(n+1)!``, the value attached to dimension ``n``."""
    return series.egf_coefficient(n + 1)


def td_intersections(n: int, order: int | None = None) -> dict[int, object]:
    """``{k: Td of the k-fold theta intersection in dimension n-k}`` read off :func:`td_theta_gf`."""
    series = td_theta_gf(order or max(DEFAULT_ORDER, n + 1))
    value = gf_value(series, n)
    return {k: value.coefficient(b=n - k, t=k) for k in range(n + 1)}


def chi_p(n: int, p: int) -> int:
    """``chi^p`` of the n-dimensional theta divisor: ``(-1)^(n-p) A(n+1, p)``."""
    if not 0 <= p <= n:
        raise PreconditionError(f"chi_p: need 0 <= p <= n (got n={n}, p={p})")
    return (-1) ** (n - p) * eulerian(n + 1, p)


def chi_y_poly(n: int) -> MPoly:
    """``chi_y`` of the n-dimensional theta divisor from the generating series."""
    return gf_value(chi_y_gf(max(DEFAULT_ORDER, n + 1)), n)


# -- genus evaluation -----------------------------------------------------------


@dataclass(frozen=True)
class GenusSpec:
    name: str
    assignment: Callable[[int], MPoly] = field(compare=False)

    def __call__(self, m: int) -> MPoly:
        if m == 0:
            return MPoly.const(1)
        value = self.assignment(m)
        return value if isinstance(value, MPoly) else MPoly.const(value)


def _series_assignment(builder):
    @lru_cache(maxsize=None)
    def value(m: int) -> MPoly:
        return gf_value(builder(max(DEFAULT_ORDER, m + 1)), m)

    return value


TODD = GenusSpec("Td", lambda m: (-1) ** m)
TODD_ST = GenusSpec("Td_st", _series_assignment(h_gf))
CHI_Y = GenusSpec("chi_y", _series_assignment(chi_y_gf))
EULER = GenusSpec("euler", lambda m: (-1) ** m * factorial(m + 1))


def genus_eval(cls: MPoly, genus: GenusSpec) -> MPoly:
    """Apply the genus multiplicatively and linearly to a θ-class."""
    mapping = {name: genus(int(name[1:])) for name in cls.symbols() if name.startswith("θ")}
    return cls.subs(mapping)


# -- formal group law ------------------------------------------------------------


def formal_group_tables(order: int = 8):
    """Coefficient tables of ``F(β(u), β(v))`` and ``β(u+v)`` up to total degree ``order``.

    ``F(X, Y) = (X + Y + aXY) / (1 - bXY)`` with ``a = s + t`` and ``b = st``,
    and ``β`` is :func:`h_gf`. The denominator is expanded as a geometric
    series in ``bXY``, which has no term below total degree 2.
    """
    _check_order(order)
    beta = h_gf(order)
    s, t = var("s"), var("t")
    a, b = s + t, s * t
    uv = ("u", "v")

    def trunc(p: MPoly) -> MPoly:
        return p.truncate_degree(uv, order)

    X = beta.as_polynomial("u")
    Y = beta.as_polynomial("v")
    XY = trunc(X * Y)
    numerator = trunc(X + Y + a * XY)
    geometric = MPoly.const(1)
    power = MPoly.const(1)
    for _ in range(order // 2):
        power = trunc(power * b * XY)
        geometric = geometric + power
    lhs = trunc(numerator * geometric)

    u_plus_v = var("u") + var("v")
    rhs = MPoly()
    for k, c in enumerate(beta.coeffs):
        if c:
            rhs = rhs + c * u_plus_v**k
    return bivariate_expand(lhs, order), bivariate_expand(rhs, order)
