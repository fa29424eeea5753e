"""Face numbers, f- and h-polynomials of the permutohedron.

Faces of the n-dimensional permutohedron correspond to ordered set
partitions of ``{1..n+1}``; a face with ``k+1`` blocks has codimension ``k``.
Vertices are the permutations of ``(1, ..., n+1)`` and two vertices are
joined by an edge when they differ by swapping the values ``j`` and ``j+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .combinatorics import (
    PERMUTATION_CAP,
    eulerian,
    ordered_set_partition_count,
    stirling2,
)
from .errors import DegenerateHeightError, EnumerationLimitError, PreconditionError
from .polyring import MPoly, var

FACE_CAP = 7


@dataclass(frozen=True)
class FVector:
    n: int
    counts: tuple[int, ...]  # counts[d] = number of d-dimensional faces

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise PreconditionError("f-vector length must be n+1")

    def __getitem__(self, d: int) -> int:
        return self.counts[d]


@dataclass(frozen=True)
class HVector:
    n: int
    coefficients: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k]

    def is_symmetric(self) -> bool:
        return self.coefficients == self.coefficients[::-1]


def _check_dim(n: int):
    if n < 0:
        raise PreconditionError(f"dimension must be >= 0, got {n}")


def f_vector(n: int) -> FVector:
    _check_dim(n)
    counts = [0] * (n + 1)
    for k in range(n + 1):
        counts[n - k] = factorial(k + 1) * stirling2(n + 1, k + 1)
    return FVector(n, tuple(counts))


def f_poly(n: int) -> MPoly:
    """``sum_k f_{n-k} s^{n-k} t^k``."""
    fv = f_vector(n)
    s, t = var("s"), var("t")
    return sum((fv[n - k] * s ** (n - k) * t**k for k in range(n + 1)), MPoly())


def h_poly(n: int) -> MPoly:
    return f_poly(n).subs({"s": var("s") - var("t")})


def h_vector(n: int) -> HVector:
    """Coefficients ``h_k`` of ``s^k t^(n-k)`` in :func:`h_poly`."""
    p = h_poly(n)
    return HVector(n, tuple(p.coefficient(s=k, t=n - k) for k in range(n + 1)))


def face_oracle(n: int, cap: int = FACE_CAP) -> FVector:
    """f-vector by enumerating ordered set partitions of ``{1..n+1}``."""
    _check_dim(n)
    if n > cap:
        raise EnumerationLimitError("face_oracle", n, cap)
    counts = [0] * (n + 1)
    for k in range(n + 1):
        counts[n - k] = ordered_set_partition_count(n + 1, k + 1, cap=n + 1)
    return FVector(n, tuple(counts))


def default_height(n: int) -> tuple[int, ...]:
    return tuple(2**i for i in range(n + 1))


def vertex_index_oracle(n: int, height=None, cap: int = PERMUTATION_CAP) -> HVector:
    """Histogram of Morse indices of a linear height function on the vertices.

    The index of a vertex is the number of its neighbours with smaller height.
    """
    _check_dim(n)
    if n + 1 > cap:
        raise EnumerationLimitError("vertex_index_oracle", n, cap - 1)
    height = default_height(n) if height is None else tuple(Fraction(h) for h in height)
    if len(height) != n + 1:
        raise PreconditionError(f"height needs {n + 1} entries, got {len(height)}")
    # swapping the values at positions a, b changes the height by a multiple
    # of height[a] - height[b], so distinct entries is exactly genericity
    if len(set(height)) != len(height):
        raise DegenerateHeightError(f"height {height} has repeated entries; adjacent vertices tie")

    hist = [0] * (n + 1)
    for vertex in permutations(range(1, n + 2)):
        level = sum(h * x for h, x in zip(height, vertex))
        pos = {value: i for i, value in enumerate(vertex)}
        index = 0
        for j in range(1, n + 1):
            a, b = pos[j], pos[j + 1]
            # neighbour has j and j+1 exchanged
            neighbour = level + height[a] - height[b]
            if neighbour == level:
                raise DegenerateHeightError(f"tie between {vertex} and its neighbour")
            if neighbour < level:
                index += 1
        hist[index] += 1
    return HVector(n, tuple(hist))


def toric_betti(n: int, k: int) -> int:
    """Even Betti number ``b_{2k}`` of the permutohedral toric variety."""
    _check_dim(n)
    if not 0 <= k <= n:
        raise PreconditionError(f"toric_betti: need 0 <= k <= n (got n={n}, k={k})")
    return eulerian(n + 1, k)
