"""Theta classes in the complex cobordism ring.

The master series is ``β(z) = z + sum_m θm z^{m+1}/(m+1)!``. Powers of ``β``
produce the classes of intersections of translated theta divisors, and a sum
over the symmetric group of products of ``1/β`` gives the class of the
permutohedral variety in terms of the ``θm``.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .errors import EnumerationLimitError, FormulaViolationError, PreconditionError
from .genus import TODD, genus_eval
from .polyring import (
    MPoly,
    TLaurent,
    XSeries,
    symbol_name,
    theta,
    theta_grade,
    theta_grades,
    xseries_divide,
)

CLASS_CAP = 5
DEFAULT_SEED = 20200917
Z_RANGE = 10**6


def beta_series(order: int) -> XSeries:
    if order < 1:
        raise PreconditionError(f"order must be >= 1, got {order}")
    coeffs = [MPoly(), MPoly.const(1)]
    coeffs += [theta(m) * Fraction(1, factorial(m + 1)) for m in range(1, order)]
    return XSeries(coeffs, order)


def intersection_class(n: int, k: int) -> MPoly:
    """Class of the intersection of ``k+1`` generic translates of the n-dimensional theta divisor."""
    if not 0 <= k <= n:
        raise PreconditionError(f"intersection_class: need 0 <= k <= n (got n={n}, k={k})")
    beta = beta_series(n + 1)
    return (beta ** (k + 1)).egf_coefficient(n + 1)


def curve_genus_check(n: int) -> int:
    """Genus of the curve cut out by ``n`` translates, via its Todd genus."""
    if n < 1:
        raise PreconditionError(f"curve_genus_check: n must be >= 1, got {n}")
    g = 1 - genus_eval(intersection_class(n, n - 1), TODD).constant_term()
    expected = 1 + n * factorial(n + 1) // 2
    if g != expected:
        raise FormulaViolationError(f"curve genus at n={n}: Todd path gives {g}, closed form {expected}")
    return g


@dataclass(frozen=True)
class EvaluationPoint:
    z: tuple[Fraction, ...]
    seed: int | None = None

    def validate(self, n: int):
        if len(self.z) != n + 1:
            raise PreconditionError(f"evaluation point needs {n + 1} coordinates, got {len(self.z)}")
        if len(set(self.z)) != len(self.z):
            raise PreconditionError(f"evaluation point {self.z} has coinciding coordinates")


def random_point(n: int, rng: random.Random, seed: int | None = None) -> EvaluationPoint:
    z = tuple(Fraction(v) for v in rng.sample(range(1, Z_RANGE + 1), n + 1))
    return EvaluationPoint(z, seed)


def inverse_beta_tail(order: int) -> XSeries:
    """``u / β(u)``: the reciprocal of ``β(u)/u``, whose constant term is 1."""
    beta_over_u = beta_series(order + 1).shift_down(1)
    return xseries_divide(XSeries.constant(1, order), beta_over_u)


def _check_size(n: int, cap: int, allow_large: bool):
    if n < 1:
        raise PreconditionError(f"permutohedral_class: n must be >= 1, got {n}")
    if n > cap:
        if not allow_large:
            raise EnumerationLimitError("permutohedral_class", n, cap)
        warnings.warn(f"summing {factorial(n + 1)} Laurent products for n={n}", RuntimeWarning, stacklevel=3)


def permutohedral_sum(n: int, point: EvaluationPoint, grade_cap: int | None = None) -> TLaurent:
    """``sum_σ prod_i 1/β(t w_i)`` as a Laurent series in ``t`` on the window ``[-n, 0]``."""
    point.validate(n)
    if grade_cap is None:
        grade_cap = n
    elif grade_cap < n:
        raise PreconditionError(f"grade cap {grade_cap} would discard the grade-{n} answer")
    tail = inverse_beta_tail(n).coeffs
    total = None
    for sigma in permutations(range(n + 1)):
        product = None
        for i in range(n):
            w = point.z[sigma[i]] - point.z[sigma[i + 1]]
            # 1/β(tw) = (tw)^{-1} * sum_k r_k (tw)^k
            factor = TLaurent(-1, [r * w ** (k - 1) for k, r in enumerate(tail)], grade_cap=grade_cap)
            if product is None:
                product = factor
            else:
                # the final factor brings the window down to [-n, 0]
                product = product.mul(factor, floor=-n, top=0 if i == n - 1 else None)
        total = product if total is None else total + product
    return total


def permutohedral_class(
    n: int,
    point: EvaluationPoint | None = None,
    cap: int = CLASS_CAP,
    allow_large: bool = False,
    grade_cap: int | None = None,
) -> MPoly:
    _check_size(n, cap, allow_large)
    if point is None:
        point = random_point(n, random.Random(DEFAULT_SEED), DEFAULT_SEED)
    total = permutohedral_sum(n, point, grade_cap)
    residue = total.principal_part()
    if residue:
        k = min(residue)
        raise FormulaViolationError(
            f"principal part does not vanish at n={n}: coefficient of t^{k} is {residue[k]}"
        )
    result = total.constant_term()
    if result and theta_grades(result) != {n}:
        raise FormulaViolationError(f"class at n={n} is not homogeneous of grade {n}: {result}")
    return result


@dataclass(frozen=True)
class IndependenceReport:
    n: int
    seed: int | None
    points: tuple[EvaluationPoint, ...]
    classes: tuple[MPoly, ...]

    @property
    def distinct(self) -> list[MPoly]:
        out: list[MPoly] = []
        for c in self.classes:
            if c not in out:
                out.append(c)
        return out

    @property
    def consistent(self) -> bool:
        return len(self.distinct) == 1


def class_independence_check(
    n: int,
    trials: int = 3,
    seed: int | None = DEFAULT_SEED,
    cap: int = CLASS_CAP,
    allow_large: bool = False,
    grade_cap: int | None = None,
) -> IndependenceReport:
    """Evaluate the permutohedral class at ``trials`` independent random points."""
    if trials < 2:
        raise PreconditionError(f"need at least 2 trials, got {trials}")
    _check_size(n, cap, allow_large)
    rng = random.Random(seed)
    points = tuple(random_point(n, rng, seed) for _ in range(trials))
    classes = tuple(permutohedral_class(n, p, cap=max(cap, n), grade_cap=grade_cap) for p in points)
    return IndependenceReport(n, seed, points, classes)


def theta_to_json(p: MPoly) -> dict:
    """``{"grade": g, "terms": [{"monomial": {"1": 3}, "coeff": "1/2"}, ...]}``."""
    terms = []
    grades = set()
    for mono, c in p.sorted_terms():
        monomial = {}
        for idx, e in mono:
            name = symbol_name(idx)
            if not name.startswith("θ"):
                raise PreconditionError(f"{p} is not a θ-class")
            monomial[name[1:]] = e
        grades.add(theta_grade(mono))
        terms.append({"monomial": monomial, "coeff": str(c)})
    grade = grades.pop() if len(grades) == 1 else None
    return {"grade": grade, "terms": terms}
