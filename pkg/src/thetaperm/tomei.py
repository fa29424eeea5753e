"""Numerical invariants of the Tomei manifold of isospectral tridiagonal matrices."""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import eulerian
from .errors import FormulaViolationError, PreconditionError
from .genus import chi_y_poly
from .hodge import Pairing, Report, signature_bernoulli, signature_theta, signature_xpi
from .permutohedron import toric_betti

# almost complex Hermitian Tomei 4-manifold would need Td = (tau + chi)/4
HERMITIAN_N2_EXAMPLE = {"euler": 6, "signature": 0, "todd": "3/2"}


@dataclass(frozen=True)
class TomeiInvariants:
    n: int
    betti: tuple[int, ...]  # mod-2 Betti numbers b_0..b_n
    euler: int

    def to_dict(self) -> dict:
        return {"n": self.n, "betti": list(self.betti), "euler": self.euler}


def tomei_invariants(n: int) -> TomeiInvariants:
    if n < 0:
        raise PreconditionError(f"dimension must be >= 0, got {n}")
    betti = tuple(eulerian(n + 1, k) for k in range(n + 1))
    alternating = sum((-1) ** k * b for k, b in enumerate(betti))
    euler = signature_bernoulli(n)
    if euler != alternating:
        raise FormulaViolationError(
            f"Tomei Euler characteristic at n={n}: Bernoulli form {euler}, Betti sum {alternating}"
        )
    return TomeiInvariants(n, betti, euler)


def triality_report(n: int) -> Report:
    inv = tomei_invariants(n)
    chi_y = chi_y_poly(n)
    pairings = []
    for k in range(n + 1):
        b_tomei = inv.betti[k]
        pairings.append(Pairing(f"b_{k}(M_T) vs b_{2 * k}(X)", b_tomei, toric_betti(n, k)))
        pairings.append(
            Pairing(f"b_{k}(M_T) vs (-1)^(n-k) chi^{k}(Theta)", b_tomei, (-1) ** (n - k) * chi_y.coefficient(y=k))
        )
    extras: dict = {"euler(M_T)": inv.euler}
    if n % 2 == 0:
        pairings.append(Pairing("chi(M_T) vs tau(X)", inv.euler, signature_xpi(n)))
        pairings.append(Pairing("chi(M_T) vs tau(Theta)", inv.euler, signature_theta(n)))
    if n == 2:
        extras["hermitian_tomei_4d"] = HERMITIAN_N2_EXAMPLE
    return Report(n, tuple(pairings), extras)
