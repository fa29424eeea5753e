"""The identity suite behind ``thetaperm verify``.

Each check compares two independently computed sides and records every
mismatch. Exceptions raised inside a check are captured as failures so that
one broken identity does not hide the others; the exception class decides
the exit code.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import combinatorics as comb
from . import cobordism, genus, hodge, permutohedron, tomei
from .config import Config
from .errors import FormulaViolationError, ThetapermError
from .polyring import MPoly, theta, var

KNOWN_CLASSES = {
    1: -theta(1),
    2: theta(2),
    3: Fraction(1, 2) * theta(1) ** 3 - Fraction(2, 3) * theta(1) * theta(2) - Fraction(5, 6) * theta(3),
}


@dataclass
class CheckResult:
    name: str
    anchor: str
    failures: list[str] = field(default_factory=list)
    error: ThetapermError | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.error is None

    @property
    def exit_code(self) -> int:
        if self.ok:
            return 0
        if self.error is not None:
            return self.error.exit_code
        return FormulaViolationError.exit_code

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "ok": self.ok,
            "failures": self.failures,
            "error": None if self.error is None else f"{type(self.error).__name__}: {self.error}",
        }


class _Checker:
    def __init__(self, result: CheckResult):
        self.result = result

    def equal(self, label: str, lhs, rhs):
        if lhs != rhs:
            self.result.failures.append(f"{label}: {lhs} != {rhs}")


def _eulerian_towers(cx: _Checker, n_max: int, cfg: Config):
    for n in range(1, min(n_max + 1, cfg.perm_cap) + 1):
        row = comb.eulerian_row(n)
        cx.equal(f"formula row {n}", tuple(comb.eulerian_by_formula(n, m) for m in range(n)), row)
        cx.equal(f"descents row {n}", comb.eulerian_by_descents(n, cap=cfg.perm_cap), row)
        cx.equal(f"row sum {n}", sum(row), factorial(n))
        cx.equal(f"symmetry row {n}", row, row[::-1])


def _ordered_partitions(cx: _Checker, n_max: int, cfg: Config):
    for n in range(1, min(n_max + 1, cfg.perm_cap) + 1):
        for k in range(1, n + 1):
            cx.equal(
                f"ordered partitions ({n},{k})",
                comb.ordered_set_partition_count(n, k, cap=cfg.perm_cap),
                factorial(k) * comb.stirling2(n, k),
            )


def _bernoulli(cx: _Checker, n_max: int, cfg: Config):
    for m in range(2, n_max + 4):
        cx.equal(f"Bernoulli recurrence m={m}", sum(comb.binomial(m, k) * comb.bernoulli(k) for k in range(m)), 0)


def _faces(cx: _Checker, n_max: int, cfg: Config):
    s, t = var("s"), var("t")
    for n in range(0, n_max + 1):
        if n <= cfg.face_cap:
            cx.equal(f"face oracle n={n}", permutohedron.face_oracle(n, cap=cfg.face_cap), permutohedron.f_vector(n))
        h = permutohedron.h_poly(n)
        cx.equal(f"h = Eulerian n={n}", permutohedron.h_vector(n).coefficients, comb.eulerian_row(n + 1))
        cx.equal(f"Dehn-Sommerville n={n}", h.subs({"s": t, "t": s}), h)
        cx.equal(f"f(s,t) = h(s+t,t) n={n}", h.subs({"s": s + t}), permutohedron.f_poly(n))


def _vertex_indices(cx: _Checker, n_max: int, cfg: Config):
    rng = random.Random(cfg.seed)
    for n in range(1, min(n_max, 5, cfg.perm_cap - 1) + 1):
        expected = comb.eulerian_row(n + 1)
        cx.equal(f"default height n={n}", permutohedron.vertex_index_oracle(n).coefficients, expected)
        for trial in range(3):
            height = rng.sample(range(-1000, 1000), n + 1)
            cx.equal(
                f"height {height} n={n}",
                permutohedron.vertex_index_oracle(n, height, cap=cfg.perm_cap).coefficients,
                expected,
            )


def _face_gf(cx: _Checker, n_max: int, cfg: Config):
    lhs = genus.f_gf(cfg.order).subs({"s": -var("b")})
    rhs = genus.td_theta_gf(cfg.order)
    for k in range(cfg.order + 1):
        cx.equal(f"x^{k}", lhs[k], rhs[k])
    for n in range(0, min(n_max, cfg.order - 1) + 1):
        cx.equal(f"f_gf n={n}", genus.gf_value(genus.f_gf(cfg.order), n), permutohedron.f_poly(n))


def _h_gf(cx: _Checker, n_max: int, cfg: Config):
    series = genus.h_gf(cfg.order)
    chi = genus.chi_y_gf(cfg.order)
    y = var("y")
    for n in range(0, min(n_max, cfg.order - 1) + 1):
        value = genus.gf_value(series, n)
        cx.equal(f"h_gf vs h_poly n={n}", value, permutohedron.h_poly(n))
        row = comb.eulerian_row(n + 1)
        cx.equal(f"h_gf vs Eulerian n={n}", tuple(value.coefficient(s=k, t=n - k) for k in range(n + 1)), row)
        cx.equal(f"chi_y vs h(y,-1) n={n}", genus.gf_value(chi, n), value.subs({"s": y, "t": -1}))
        chi_p_poly = sum((genus.chi_p(n, p) * y**p for p in range(n + 1)), MPoly())
        cx.equal(f"chi_p sum n={n}", chi_p_poly, genus.gf_value(chi, n))


def _formal_group(cx: _Checker, n_max: int, cfg: Config):
    lhs, rhs = genus.formal_group_tables(min(8, cfg.order))
    for key in sorted(set(lhs) | set(rhs)):
        cx.equal(f"u^{key[0]} v^{key[1]}", lhs.get(key, MPoly()), rhs.get(key, MPoly()))


def _todd_intersections(cx: _Checker, n_max: int, cfg: Config):
    for n in range(0, n_max + 1):
        from_series = genus.td_intersections(n)
        for k in range(n + 1):
            expected = (-1) ** (n - k) * factorial(k + 1) * comb.stirling2(n + 1, k + 1)
            cls = cobordism.intersection_class(n, k)
            cx.equal(f"Td class ({n},{k})", genus.genus_eval(cls, genus.TODD), expected)
            cx.equal(f"Td series ({n},{k})", from_series[k], expected)
        cx.equal(f"Td_st first class n={n}", genus.genus_eval(cobordism.intersection_class(n, 0), genus.TODD_ST), permutohedron.h_poly(n))
        if n >= 1:
            cx.equal(f"curve genus n={n}", cobordism.curve_genus_check(n), 1 + n * factorial(n + 1) // 2)


def _hodge(cx: _Checker, n_max: int, cfg: Config):
    for n in range(0, n_max + 1):
        for p in range(n + 1):
            closed = hodge.s_correction_closed(n, p)
            cx.equal(f"S oracle ({n},{p})", closed, hodge.s_correction_oracle(n, p))
            cx.equal(f"S symmetry ({n},{p})", closed, hodge.s_correction_closed(n, n - p))
        diamond = hodge.hodge_diamond(n)
        for v in diamond.violations():
            cx.result.failures.append(f"diamond n={n}: {v}")
        for p in range(n + 1):
            alt = sum((-1) ** q * diamond.h[p][q] for q in range(n + 1))
            cx.equal(f"chi^{p} n={n}", alt, genus.chi_p(n, p))


def _signatures(cx: _Checker, n_max: int, cfg: Config):
    for n in range(0, n_max + 1, 2):
        tau = hodge.signature_theta(n)
        cx.equal(f"Eulerian alternating n={n}", tau, sum((-1) ** k * a for k, a in enumerate(comb.eulerian_row(n + 1))))
        cx.equal(f"chi_y(1) n={n}", genus.chi_y_poly(n).evaluate({"y": 1}), tau)
        cx.equal(f"Tomei euler n={n}", tomei.tomei_invariants(n).euler, tau)
    for n in range(1, n_max + 1, 2):
        cx.equal(f"Tomei euler odd n={n}", tomei.tomei_invariants(n).euler, 0)


def _reports(cx: _Checker, n_max: int, cfg: Config):
    for n in range(0, n_max + 1):
        for label, report in (("duality", hodge.duality_report(n)), ("triality", tomei.triality_report(n))):
            for p in report.failures():
                cx.result.failures.append(f"{label} n={n}: {p.label}: {p.lhs} != {p.rhs}")


def _classes(cx: _Checker, n_max: int, cfg: Config, fast: bool):
    top = min(n_max, cfg.class_cap, 3 if fast else cfg.class_cap)
    for n in range(1, top + 1):
        report = cobordism.class_independence_check(
            n, trials=3, seed=cfg.seed, cap=cfg.class_cap, grade_cap=cfg.grade_cap
        )
        if not report.consistent:
            cx.result.failures.append(f"n={n}: class depends on the point: {[str(c) for c in report.distinct]}")
            continue
        cls = report.classes[0]
        if n in KNOWN_CLASSES:
            cx.equal(f"class n={n}", cls, KNOWN_CLASSES[n])
        cx.equal(f"Td class n={n}", genus.genus_eval(cls, genus.TODD), 1)
        cx.equal(f"Td_st class n={n}", genus.genus_eval(cls, genus.TODD_ST), (-1) ** n * permutohedron.h_poly(n))
        cx.equal(f"euler class n={n}", genus.genus_eval(cls, genus.EULER), factorial(n + 1))


CHECKS = (
    ("eulerian towers", "expli", _eulerian_towers),
    ("ordered set partitions", "st", _ordered_partitions),
    ("bernoulli recurrence", "tau", _bernoulli),
    ("face numbers", "hf", _faces),
    ("vertex indices", "relat1", _vertex_indices),
    ("face generating function", "Rel", _face_gf),
    ("h generating function", "equal", _h_gf),
    ("formal group law", "expo", _formal_group),
    ("todd of intersections", "rel", _todd_intersections),
    ("hodge numbers", "hpn", _hodge),
    ("signatures", "chitX", _signatures),
    ("duality and triality", "relat1X", _reports),
    ("permutohedral class", "xpi", None),
)


def run_verify(n_max: int, fast: bool = False, cfg: Config | None = None, progress=None) -> list[CheckResult]:
    cfg = cfg or Config()
    if fast:
        n_max = min(n_max, 4)
    results = []
    for name, anchor, fn in CHECKS:
        result = CheckResult(name, anchor)
        cx = _Checker(result)
        start = time.perf_counter()
        try:
            if fn is None:
                _classes(cx, n_max, cfg, fast)
            else:
                fn(cx, n_max, cfg)
        except ThetapermError as exc:
            result.error = exc
        result.seconds = time.perf_counter() - start
        results.append(result)
        if progress is not None:
            progress(result)
    return results


def exit_code(results: list[CheckResult]) -> int:
    return max((r.exit_code for r in results), default=0)
