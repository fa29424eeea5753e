"""Exact polynomial and series arithmetic.

* :class:`MPoly` - sparse multivariate polynomial over the rationals.
* :class:`XSeries` - power series in ``x`` truncated at a fixed order, with
  :class:`MPoly` coefficients.
* :class:`TLaurent` - Laurent series in ``t`` over a window of exponents, with
  theta-class coefficients truncated at a maximal grade.

Symbols are identified by name. The fixed symbol order is
``s < t < b < y < u < v < θ1 < θ2 < ... < z1 < z2 < ...``; monomials are kept
as tuples of ``(symbol_index, exponent)`` pairs sorted by that index. Terms
print in graded-lexicographic order, highest first, so the text form is
canonical (``1/2*θ1^3 - 2/3*θ1*θ2 - 5/6*θ3``).

Nothing here ever leaves exact arithmetic: division of polynomials either
succeeds exactly or raises :class:`~thetaperm.errors.InexactDivisionError`
carrying the nonzero remainder.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from numbers import Rational

from .errors import InexactDivisionError, PreconditionError, TruncationError

__all__ = [
    "MPoly",
    "XSeries",
    "TLaurent",
    "symbol_index",
    "symbol_name",
    "theta",
    "var",
    "exp_linear",
    "xseries_divide",
    "bivariate_expand",
    "theta_grade",
    "homogeneous_part",
    "truncate_grade",
    "theta_grades",
]

_BASE_SYMBOLS = ("s", "t", "b", "y", "u", "v")
_THETA_OFFSET = 100
_Z_OFFSET = 100_000
_THETA_RE = re.compile(r"^(?:θ|theta)(\d+)$")
_Z_RE = re.compile(r"^z(\d+)$")


def symbol_index(name: str) -> int:
    if name in _BASE_SYMBOLS:
        return _BASE_SYMBOLS.index(name)
    m = _THETA_RE.match(name)
    if m and int(m.group(1)) >= 1:
        return _THETA_OFFSET + int(m.group(1))
    m = _Z_RE.match(name)
    if m and int(m.group(1)) >= 1:
        return _Z_OFFSET + int(m.group(1))
    raise PreconditionError(f"unknown symbol {name!r}")


def symbol_name(index: int) -> str:
    if index < len(_BASE_SYMBOLS):
        return _BASE_SYMBOLS[index]
    if index < _Z_OFFSET:
        return f"θ{index - _THETA_OFFSET}"
    return f"z{index - _Z_OFFSET}"


def _is_theta(index: int) -> bool:
    return _THETA_OFFSET < index < _Z_OFFSET


def theta_grade(mono) -> int:
    """Weighted grade of a monomial: ``θm`` has grade ``m``, other symbols 0."""
    return sum((i - _THETA_OFFSET) * e for i, e in mono if _is_theta(i))


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for i, e in b:
        merged[i] = merged.get(i, 0) + e
    return tuple(sorted(merged.items()))


def _mono_div(a, b):
    """``a / b`` as a monomial, or ``None`` if ``b`` does not divide ``a``."""
    da = dict(a)
    for i, e in b:
        if da.get(i, 0) < e:
            return None
        da[i] -= e
    return tuple(sorted((i, e) for i, e in da.items() if e))


def _mono_key(mono):
    # graded lex; lower symbol index ranks higher at equal degree
    return (sum(e for _, e in mono), tuple((-i, e) for i, e in mono))


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        else:
            self._terms = {m: _normalize(c) for m, c in dict(terms).items() if c != 0}

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        if isinstance(c, float):
            raise TypeError("floating point coefficients are not allowed")
        return cls({(): c}) if c != 0 else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        if power == 0:
            return cls.const(1)
        return cls._raw({((symbol_index(name), power),): 1})

    @classmethod
    def from_dict(cls, terms: dict[tuple[tuple[str, int], ...], object]) -> "MPoly":
        """Build from ``{(("s", 2), ("t", 1)): coeff, ...}``."""
        out = {}
        for mono, c in terms.items():
            key = tuple(sorted((symbol_index(n), e) for n, e in mono if e))
            out[key] = out.get(key, 0) + c
        return cls(out)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self):
        return self._terms.get((), 0)

    def coefficient(self, **exponents: int):
        """Coefficient of the monomial given by keyword exponents, e.g. ``p.coefficient(s=2, t=1)``."""
        key = tuple(sorted((symbol_index(n), e) for n, e in exponents.items() if e))
        return self._terms.get(key, 0)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e for _, e in m) for m in self._terms)

    def symbols(self) -> list[str]:
        idx = sorted({i for m in self._terms for i, _ in m})
        return [symbol_name(i) for i in idx]

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _mono_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise PreconditionError("zero polynomial has no leading term")
        mono = max(self._terms, key=_mono_key)
        return mono, self._terms[mono]

    def coefficients_in(self, name: str) -> dict[int, "MPoly"]:
        """Split as ``sum_k c_k * name^k``; returns ``{k: c_k}``."""
        idx = symbol_index(name)
        out: dict[int, dict] = {}
        for mono, c in self._terms.items():
            k = 0
            rest = []
            for i, e in mono:
                if i == idx:
                    k = e
                else:
                    rest.append((i, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: MPoly._raw(v) for k, v in out.items()}

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == ({(): other} if other != 0 else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "MPoly":
        return self

    def __add__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _normalize(v)
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            if other == 0:
                return MPoly()
            return MPoly._raw({m: _normalize(c * other) for m, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MPoly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (Fraction(1) / other)
        return self.exact_div(_coerce(other))

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise PreconditionError("negative powers are not polynomial")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, d: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Multivariate division by a single divisor under the graded-lex order."""
        d = _coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_m, lead_c = d.leading_term()
        rest = dict(self._terms)
        quot: dict = {}
        rem: dict = {}
        while rest:
            m = max(rest, key=_mono_key)
            c = rest[m]
            qm = _mono_div(m, lead_m)
            if qm is None:
                rem[m] = c
                del rest[m]
                continue
            qc = Fraction(c) / lead_c
            quot[qm] = quot.get(qm, 0) + qc
            for dm, dc in d._terms.items():
                key = _mono_mul(qm, dm)
                v = rest.get(key, 0) - qc * dc
                if v:
                    rest[key] = v
                else:
                    rest.pop(key, None)
        return MPoly(quot), MPoly(rem)

    def exact_div(self, d: "MPoly") -> "MPoly":
        d = _coerce(d)
        if d.is_constant():
            c = d.constant_term()
            if c == 0:
                raise ZeroDivisionError("division by the zero polynomial")
            inv = Fraction(1) / c
            return MPoly({m: v * inv for m, v in self._terms.items()})
        q, r = self.divmod(d)
        if r:
            raise InexactDivisionError(f"({self}) is not divisible by ({d}); remainder {r}", remainder=r)
        return q

    def subs(self, mapping: dict) -> "MPoly":
        """Substitute symbols by polynomials or scalars. Keys are symbol names."""
        table = {symbol_index(k): _coerce(v) for k, v in mapping.items()}
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = table[i] ** e
            return powers[key]

        out = MPoly()
        acc: dict = {}
        for mono, c in self._terms.items():
            kept = []
            factor = None
            for i, e in mono:
                if i in table:
                    p = power(i, e)
                    factor = p if factor is None else factor * p
                else:
                    kept.append((i, e))
            if factor is None:
                key = tuple(kept)
                acc[key] = acc.get(key, 0) + c
            else:
                out = out + MPoly._raw({tuple(kept): c}) * factor
        return out + MPoly(acc)

    def evaluate(self, mapping: dict):
        """Substitute scalars for every symbol; returns a rational."""
        p = self.subs(mapping)
        if not p.is_constant():
            raise PreconditionError(f"symbols {p.symbols()} left unassigned")
        return p.constant_term()

    def truncate_degree(self, names, max_degree: int) -> "MPoly":
        """Drop terms whose total degree in ``names`` exceeds ``max_degree``."""
        idx = {symbol_index(n) for n in names}
        return MPoly._raw(
            {m: c for m, c in self._terms.items() if sum(e for i, e in m if i in idx) <= max_degree}
        )

    # -- text forms -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mono_s = "*".join(
                symbol_name(i) if e == 1 else f"{symbol_name(i)}^{e}" for i, e in mono
            )
            if not mono_s:
                term = str(c)
            elif c == 1:
                term = mono_s
            elif c == -1:
                term = "-" + mono_s
            else:
                term = f"{c}*{mono_s}"
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append(" - " + term[1:])
            else:
                parts.append(" + " + term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"

    def to_latex(self) -> str:
        text = str(self)
        text = re.sub(r"θ(\d+)", r"\\theta_{\1}", text)
        text = re.sub(r"\^(\d+)", r"^{\1}", text)
        text = re.sub(r"(-?\d+)/(\d+)\*", r"\\frac{\1}{\2}", text)
        return text.replace("*", " ")


def _coerce(x):
    if isinstance(x, MPoly):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Rational)):
        return MPoly.const(x)
    return NotImplemented


def var(name: str) -> MPoly:
    return MPoly.var(name)


def theta(m: int) -> MPoly:
    """The generator ``θm`` (``θ0`` is the unit)."""
    if m == 0:
        return MPoly.const(1)
    return MPoly.var(f"θ{m}")


def homogeneous_part(p: MPoly, grade: int) -> MPoly:
    return MPoly._raw({m: c for m, c in p.items() if theta_grade(m) == grade})


def truncate_grade(p: MPoly, max_grade: int) -> MPoly:
    return MPoly._raw({m: c for m, c in p.items() if theta_grade(m) <= max_grade})


def theta_grades(p: MPoly) -> set[int]:
    return {theta_grade(m) for m, _ in p.items()}


# -- truncated power series in x -----------------------------------------------


class XSeries:
    """``c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`` with :class:`MPoly` coefficients."""

    __slots__ = ("coeffs", "note")

    def __init__(self, coeffs, order: int | None = None, note: str = ""):
        cs = [_coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise PreconditionError("truncation order must be >= 0")
        cs = cs[: order + 1] + [MPoly()] * (order + 1 - len(cs))
        self.coeffs: tuple[MPoly, ...] = tuple(cs)
        self.note = note

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def x(cls, order: int) -> "XSeries":
        return cls([0, 1], order)

    @classmethod
    def constant(cls, c, order: int) -> "XSeries":
        return cls([c], order)

    def __getitem__(self, k: int) -> MPoly:
        if k < 0:
            return MPoly()
        if k > self.order:
            raise TruncationError(f"coefficient x^{k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def egf_coefficient(self, k: int) -> MPoly:
        """``k!`` times the coefficient of ``x^k``."""
        return self[k] * factorial(k)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, order: int) -> "XSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return XSeries(self.coeffs[: order + 1], order, self.note)

    def map(self, fn) -> "XSeries":
        return XSeries([fn(c) for c in self.coeffs], self.order, self.note)

    def subs(self, mapping: dict) -> "XSeries":
        return self.map(lambda c: c.subs(mapping))

    def _binary_order(self, other: "XSeries") -> int:
        return min(self.order, other.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries.constant(other, self.order)
        n = self._binary_order(other)
        return XSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> "XSeries":
        return self.map(lambda c: -c)

    def __sub__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other) -> "XSeries":
        return (-self) + other

    def __mul__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            c = _coerce(other)
            if c is NotImplemented:
                return NotImplemented
            return self.map(lambda a: a * c)
        n = self._binary_order(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = MPoly()
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return XSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries.constant(other, self.order)
        return xseries_divide(self, other)

    def __pow__(self, k: int) -> "XSeries":
        result = XSeries.constant(1, self.order)
        for _ in range(k):
            result = result * self
        return result

    def shift_down(self, v: int) -> "XSeries":
        """Divide by ``x^v``; the caller guarantees the low coefficients vanish."""
        return XSeries(self.coeffs[v:], self.order - v, self.note)

    def as_polynomial(self, name: str) -> MPoly:
        """The retained part ``sum c_k name^k`` as an :class:`MPoly`."""
        out = MPoly()
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + c * MPoly.var(name, k)
        return out

    def __repr__(self) -> str:
        terms = [f"({c})*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return "XSeries(" + (" + ".join(terms) or "0") + f" + O(x^{self.order + 1}))"


def exp_linear(c, order: int) -> XSeries:
    """``exp(c x)`` truncated at ``x^order``."""
    c = _coerce(c)
    coeffs = [MPoly.const(1)]
    for k in range(1, order + 1):
        coeffs.append(coeffs[-1] * c * Fraction(1, k))
    return XSeries(coeffs, order)


def _divides_all(d: MPoly, polys) -> bool:
    for p in polys:
        if p and p.divmod(d)[1]:
            return False
    return True


def xseries_divide(num: XSeries, den: XSeries) -> XSeries:
    """Exact quotient ``num / den`` of truncated series.

    A shared power of ``x`` is cancelled first. If the leading coefficient of
    the denominator is a non-constant polynomial dividing every coefficient
    of both operands, it is cancelled too. The remaining elimination divides
    by the leading coefficient exactly at each step. Cancellations are
    recorded in the ``note`` of the result.
    """
    order = min(num.order, den.order)
    num, den = num.truncate(order), den.truncate(order)
    v = den.valuation()
    if v is None:
        raise PreconditionError("division by the zero series")
    for k in range(v):
        if num.coeffs[k]:
            raise InexactDivisionError(
                f"numerator has x^{k} term below the denominator valuation {v}",
                remainder=num.coeffs[k],
            )
    notes = []
    if v:
        num, den = num.shift_down(v), den.shift_down(v)
        notes.append(f"cancelled x^{v}")
    lead = den.coeffs[0]
    if not lead.is_constant() and _divides_all(lead, num.coeffs + den.coeffs):
        num = num.map(lambda c: c.exact_div(lead))
        den = den.map(lambda c: c.exact_div(lead))
        notes.append(f"cancelled common factor ({lead})")
        lead = den.coeffs[0]
    elif not lead.is_constant():
        notes.append(f"stepwise exact division by ({lead})")
    d = den.coeffs
    q: list[MPoly] = []
    for k in range(num.order + 1):
        acc = num.coeffs[k]
        for j in range(k):
            if q[j] and d[k - j]:
                acc = acc - q[j] * d[k - j]
        try:
            q.append(acc.exact_div(lead))
        except InexactDivisionError as exc:
            raise InexactDivisionError(
                f"series division failed at x^{k}: {exc}", remainder=exc.remainder
            ) from None
    return XSeries(q, num.order, "; ".join(notes))


def bivariate_expand(expr: MPoly, order: int, first: str = "u", second: str = "v") -> dict[tuple[int, int], MPoly]:
    """Coefficient table ``{(i, j): c}`` of ``first^i second^j`` for ``i + j <= order``."""
    table: dict[tuple[int, int], MPoly] = {}
    for i, ci in expr.coefficients_in(first).items():
        for j, cij in ci.coefficients_in(second).items():
            if i + j <= order and cij:
                table[(i, j)] = cij
    return table


# -- truncated Laurent series in t -----------------------------------------------


class TLaurent:
    """``sum_{k=low}^{top} c_k t^k`` with θ-class coefficients.

    Coefficients above ``top`` are unknown (truncated), those below ``low``
    are zero. Every coefficient is cut down to θ-grade ``<= grade_cap`` when
    a cap is set.
    """

    __slots__ = ("low", "coeffs", "grade_cap")

    def __init__(self, low: int, coeffs, grade_cap: int | None = None):
        cs = [_coerce(c) for c in coeffs]
        if not cs:
            raise PreconditionError("empty Laurent window")
        if grade_cap is not None:
            cs = [truncate_grade(c, grade_cap) for c in cs]
        self.low = low
        self.coeffs: tuple[MPoly, ...] = tuple(cs)
        self.grade_cap = grade_cap

    @property
    def top(self) -> int:
        return self.low + len(self.coeffs) - 1

    def coefficient(self, k: int) -> MPoly:
        if k > self.top:
            raise TruncationError(f"t^{k} lies above the tracked window [{self.low}, {self.top}]")
        if k < self.low:
            return MPoly()
        return self.coeffs[k - self.low]

    def _cap(self, other: "TLaurent"):
        caps = [c for c in (self.grade_cap, other.grade_cap) if c is not None]
        return min(caps) if caps else None

    def __add__(self, other: "TLaurent") -> "TLaurent":
        low = min(self.low, other.low)
        top = min(self.top, other.top)
        if top < low:
            raise TruncationError("Laurent windows do not overlap")
        return TLaurent(
            low,
            [self.coefficient(k) + other.coefficient(k) for k in range(low, top + 1)],
            self._cap(other),
        )

    def mul(self, other: "TLaurent", floor: int | None = None, top: int | None = None) -> "TLaurent":
        """Product, optionally clipped to the window ``[floor, top]``.

        A nonzero coefficient below ``floor`` cannot be represented and raises
        :class:`TruncationError`.
        """
        low = self.low + other.low
        hi = min(self.top + other.low, other.top + self.low)
        if top is not None:
            hi = min(hi, top)
        cap = self._cap(other)
        out = []
        for k in range(low, hi + 1):
            acc = MPoly()
            for i in range(self.low, min(self.top, k - other.low) + 1):
                a = self.coeffs[i - self.low]
                b = other.coeffs[k - i - other.low] if k - i <= other.top else None
                if a and b:
                    acc = acc + a * b
            if cap is not None:
                acc = truncate_grade(acc, cap)
            out.append(acc)
        if floor is not None and low < floor:
            for k in range(low, min(floor, hi + 1)):
                if out[k - low]:
                    raise TruncationError(f"window underflow: nonzero t^{k} below floor {floor}")
            out = out[floor - low :]
            low = floor
        return TLaurent(low, out, cap)

    def __mul__(self, other: "TLaurent") -> "TLaurent":
        return self.mul(other)

    def scale(self, c) -> "TLaurent":
        return TLaurent(self.low, [a * c for a in self.coeffs], self.grade_cap)

    def principal_part(self) -> dict[int, MPoly]:
        """Nonzero coefficients of negative powers of ``t``."""
        return {k: self.coefficient(k) for k in range(self.low, min(0, self.top + 1)) if self.coefficient(k)}

    def constant_term(self) -> MPoly:
        return self.coefficient(0)

    def __repr__(self) -> str:
        terms = [f"({c})*t^{self.low + i}" for i, c in enumerate(self.coeffs) if c]
        return "TLaurent(" + (" + ".join(terms) or "0") + f"; window [{self.low}, {self.top}])"
