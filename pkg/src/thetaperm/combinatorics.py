"""Exact integer sequences: binomials, Stirling, Eulerian and Bernoulli numbers.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``.
Recurrence tables are memoized row by row as immutable tuples. The
``*_by_descents`` and ``ordered_set_partition_count`` functions are brute
force enumerations kept deliberately independent of the recurrences so they
can serve as oracles.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial

from .errors import EnumerationLimitError, PreconditionError

PERMUTATION_CAP = 9

__all__ = [
    "PERMUTATION_CAP",
    "binomial",
    "stirling2",
    "stirling2_row",
    "eulerian",
    "eulerian_row",
    "eulerian_by_formula",
    "eulerian_by_descents",
    "descents",
    "bernoulli",
    "set_partitions",
    "ordered_set_partition_count",
]


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise PreconditionError(f"binomial: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def stirling2_row(n: int) -> tuple[int, ...]:
    """Row ``(S(n,0), ..., S(n,n))`` of Stirling numbers of the second kind."""
    if n < 0:
        raise PreconditionError(f"stirling2_row: n must be >= 0, got {n}")
    if n == 0:
        return (1,)
    prev = stirling2_row(n - 1) + (0,)
    # S(n, k) = k S(n-1, k) + S(n-1, k-1)
    return tuple(
        k * prev[k] + (prev[k - 1] if k > 0 else 0) for k in range(n + 1)
    )


def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return stirling2_row(n)[k]


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> tuple[int, ...]:
    """Row ``(A(n,0), ..., A(n,n-1))``: permutations of ``S_n`` by descent count."""
    if n < 1:
        raise PreconditionError(f"eulerian_row: n must be >= 1, got {n}")
    if n == 1:
        return (1,)
    prev = eulerian_row(n - 1)

    def at(k: int) -> int:
        return prev[k] if 0 <= k < n - 1 else 0

    return tuple((n - k) * at(k - 1) + (k + 1) * at(k) for k in range(n))


def eulerian(n: int, k: int) -> int:
    if n < 1:
        raise PreconditionError(f"eulerian: n must be >= 1, got {n}")
    if k < 0 or k > n - 1:
        return 0
    return eulerian_row(n)[k]


def eulerian_by_formula(n: int, m: int) -> int:
    """Alternating binomial sum for ``A(n, m)``, independent of the recurrence."""
    if n < 1 or not 0 <= m <= n - 1:
        raise PreconditionError(f"eulerian_by_formula: need n >= 1, 0 <= m < n (got {n}, {m})")
    return sum((-1) ** k * comb(n + 1, k) * (m + 1 - k) ** n for k in range(m + 1))


def descents(perm) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)


def eulerian_by_descents(n: int, cap: int = PERMUTATION_CAP) -> tuple[int, ...]:
    if n < 1:
        raise PreconditionError(f"eulerian_by_descents: n must be >= 1, got {n}")
    if n > cap:
        raise EnumerationLimitError("eulerian_by_descents", n, cap)
    hist = [0] * n
    for perm in permutations(range(1, n + 1)):
        hist[descents(perm)] += 1
    return tuple(hist)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(1),)
    prev = _bernoulli_table(n - 1)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    acc = sum(comb(n + 1, k) * prev[k] for k in range(n))
    return prev + (Fraction(-acc, n + 1),)


def bernoulli(n: int) -> Fraction:
    """``B_n`` with the convention ``u/(e^u - 1) = sum B_n u^n / n!`` (so ``B_1 = -1/2``)."""
    if n < 0:
        raise PreconditionError(f"bernoulli: n must be >= 0, got {n}")
    return _bernoulli_table(n)[n]


def set_partitions(n: int):
    """Yield every set partition of ``{1..n}`` as a restricted growth string."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def extend(i: int, top: int):
        if i == n:
            yield tuple(word)
            return
        for b in range(top + 2):
            word[i] = b
            yield from extend(i + 1, max(top, b))

    # element 1 always opens block 0
    yield from extend(1, 0)


def ordered_set_partition_count(n: int, blocks: int, cap: int = PERMUTATION_CAP) -> int:
    """Count ordered set partitions of ``{1..n}`` into ``blocks`` blocks by enumeration.

    Unordered partitions are enumerated as restricted growth strings and each
    one is weighted by the number of ways to order its blocks.
    """
    if not 1 <= blocks <= n:
        raise PreconditionError(
            f"ordered_set_partition_count: need 1 <= blocks <= n (got n={n}, blocks={blocks})"
        )
    if n > cap:
        raise EnumerationLimitError("ordered_set_partition_count", n, cap)
    unordered = sum(1 for word in set_partitions(n) if max(word) + 1 == blocks)
    return unordered * factorial(blocks)
