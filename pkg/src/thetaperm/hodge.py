"""Hodge numbers of smooth theta divisors and of permutohedral varieties.

Off the middle row the Hodge numbers of the n-dimensional theta divisor are
products of binomials (inherited from the ambient abelian variety, then
mirrored by Serre duality). The middle row ``p + q = n`` is fixed by the
known ``chi^p`` values: ``h^{p,n-p} = A(n+1, p) - S(n, p)`` where ``S`` is
the signed sum of the other entries of that row of the Hodge table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .combinatorics import bernoulli, binomial, eulerian
from .errors import IntegralityError, PreconditionError
from .genus import chi_y_poly
from .permutohedron import toric_betti
from .polyring import MPoly, var


def _check(n: int, *idx: int):
    if n < 0:
        raise PreconditionError(f"dimension must be >= 0, got {n}")
    for i in idx:
        if not 0 <= i <= n:
            raise PreconditionError(f"index {i} outside 0..{n}")


def _as_integer(value: Fraction, what: str) -> int:
    if Fraction(value).denominator != 1:
        raise IntegralityError(f"{what} = {value} is not an integer")
    return int(value)


def s_correction_closed(n: int, p: int) -> int:
    _check(n, p)
    bracket = (
        (-1) ** p * Fraction(2 * p - n, n + 2) * binomial(n + 1, p)
        + sum((-1) ** k * binomial(n + 1, k) for k in range(p))
    )
    return _as_integer((-1) ** p * binomial(n + 2, p + 1) * bracket, f"S({n},{p})")


def _off_middle(n: int, p: int, q: int) -> int:
    if p + q <= n - 1:
        return binomial(n + 1, p) * binomial(n + 1, q)
    return binomial(n + 1, p + 1) * binomial(n + 1, q + 1)


def s_correction_oracle(n: int, p: int) -> int:
    """Middle-row correction recomputed from the off-middle Hodge numbers alone."""
    _check(n, p)
    known = sum((-1) ** q * _off_middle(n, p, q) for q in range(n + 1) if q != n - p)
    return (-1) ** (n - p) * known


def hodge_number(n: int, p: int, q: int, oracle: bool = False) -> int:
    _check(n, p, q)
    if p + q != n:
        return _off_middle(n, p, q)
    correction = s_correction_oracle(n, p) if oracle else s_correction_closed(n, p)
    return eulerian(n + 1, p) - correction


@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    h: tuple[tuple[int, ...], ...]  # h[p][q]
    betti: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        betti = tuple(
            sum(self.h[p][m - p] for p in range(self.n + 1) if 0 <= m - p <= self.n)
            for m in range(2 * self.n + 1)
        )
        object.__setattr__(self, "betti", betti)

    def row(self, m: int) -> list[int]:
        """Entries with ``p + q = m``, ordered by decreasing ``p``."""
        return [self.h[p][m - p] for p in range(self.n, -1, -1) if 0 <= m - p <= self.n]

    def euler_characteristic(self) -> int:
        return sum((-1) ** m * b for m, b in enumerate(self.betti))

    def violations(self) -> list[str]:
        n, h = self.n, self.h
        out = []
        for p in range(n + 1):
            for q in range(n + 1):
                if h[p][q] != h[n - p][n - q]:
                    out.append(f"Serre duality: h[{p}][{q}]={h[p][q]} != h[{n - p}][{n - q}]={h[n - p][n - q]}")
                if h[p][q] != h[q][p]:
                    out.append(f"Hodge symmetry: h[{p}][{q}]={h[p][q]} != h[{q}][{p}]={h[q][p]}")
                if h[p][q] < 0:
                    out.append(f"negative Hodge number h[{p}][{q}]={h[p][q]}")
        if self.euler_characteristic() != euler_char_theta(n):
            out.append(f"Euler characteristic {self.euler_characteristic()} != {euler_char_theta(n)}")
        return out

    def to_text(self) -> str:
        width = max(len(str(v)) for row in self.h for v in row)
        bwidth = max(len(str(b)) for b in self.betti)
        slots = 2 * self.n + 1
        lines = []
        for m in range(2 * self.n + 1):
            cells = [" " * width] * slots
            for p in range(self.n + 1):
                q = m - p
                if 0 <= q <= self.n:
                    cells[self.n + q - p] = str(self.h[p][q]).center(width)
            lines.append(" ".join(cells) + "   " + str(self.betti[m]).rjust(bwidth))
        return "\n".join(lines) + "\n"

    def to_latex(self) -> str:
        slots = 2 * self.n + 1
        lines = [r"\[ \begin{tikzcd}[row sep=small, column sep=tiny]"]
        for m in range(2 * self.n + 1):
            cells = [""] * slots
            for p in range(self.n + 1):
                q = m - p
                if 0 <= q <= self.n:
                    cells[self.n + q - p] = str(self.h[p][q])
            lines.append("  " + " & ".join(cells) + f" && {self.betti[m]} \\\\")
        lines.append(r"\end{tikzcd} \]")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "h": [list(r) for r in self.h], "betti": list(self.betti)}


def hodge_diamond(n: int, oracle: bool = False) -> HodgeDiamond:
    _check(n)
    table = tuple(
        tuple(hodge_number(n, p, q, oracle=oracle) for q in range(n + 1)) for p in range(n + 1)
    )
    return HodgeDiamond(n, table)


def euler_char_theta(n: int) -> int:
    _check(n)
    return (-1) ** n * factorial(n + 1)


def signature_bernoulli(n: int) -> int:
    """``2^{n+2} (2^{n+2} - 1) B_{n+2} / (n+2)``, asserted integral."""
    value = Fraction(2 ** (n + 2) * (2 ** (n + 2) - 1), n + 2) * bernoulli(n + 2)
    return _as_integer(value, f"Bernoulli signature expression at n={n}")


def signature_theta(n: int) -> int:
    _check(n)
    if n % 2:
        raise PreconditionError(f"signature formula applies to even n only, got {n}")
    return signature_bernoulli(n)


def hodge_xpi(n: int, p: int, q: int) -> int:
    _check(n, p, q)
    return eulerian(n + 1, p) if p == q else 0


# -- duality with the permutohedral variety ---------------------------------------


@dataclass(frozen=True)
class Pairing:
    label: str
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"label": self.label, "lhs": str(self.lhs), "rhs": str(self.rhs), "equal": self.equal}


@dataclass(frozen=True)
class Report:
    n: int
    pairings: tuple[Pairing, ...]
    extras: dict = field(default_factory=dict)

    @property
    def all_equal(self) -> bool:
        return all(p.equal for p in self.pairings)

    def failures(self) -> list[Pairing]:
        return [p for p in self.pairings if not p.equal]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "all_equal": self.all_equal,
            "pairings": [p.to_dict() for p in self.pairings],
            **{k: str(v) if isinstance(v, MPoly) else v for k, v in self.extras.items()},
        }

    def to_text(self) -> str:
        lines = []
        for p in self.pairings:
            mark = "==" if p.equal else "!="
            lines.append(f"{p.label}: {p.lhs} {mark} {p.rhs}")
        for k, v in self.extras.items():
            lines.append(f"{k}: {v}")
        lines.append("all equal" if self.all_equal else f"{len(self.failures())} mismatch(es)")
        return "\n".join(lines) + "\n"


def signature_xpi(n: int) -> int:
    """Alternating sum of the even Betti numbers of the permutohedral variety."""
    return sum((-1) ** k * toric_betti(n, k) for k in range(n + 1))


def duality_report(n: int) -> Report:
    _check(n)
    chi_y = chi_y_poly(n)
    pairings = [
        Pairing(
            f"b_{2 * k}(X) vs (-1)^(n-k) chi^{k}(Theta)",
            toric_betti(n, k),
            (-1) ** (n - k) * chi_y.coefficient(y=k),
        )
        for k in range(n + 1)
    ]
    s = var("s")
    poincare = sum((toric_betti(n, k) * s ** (2 * k) for k in range(n + 1)), MPoly())
    pairings.append(
        Pairing("Poincare(X, s) vs (-1)^n chi_{-s^2}(Theta)", poincare, (-1) ** n * chi_y.subs({"y": -(s**2)}))
    )
    extras = {}
    if n % 2 == 0:
        tau = signature_xpi(n)
        pairings.append(Pairing("tau(X) vs tau(Theta)", tau, signature_theta(n)))
        extras["tau"] = tau
    return Report(n, tuple(pairings), extras)
