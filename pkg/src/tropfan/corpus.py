"""Named desk-scale matroids used by the tests, scripts and acceptance suite."""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .errors import MatroidError
from .matroid import ExactMatrix, Matroid, braid_matroid, from_matrix, pg_matroid, pg_points, uniform_matroid

# columns z, y, y - z, x, x - z in coordinates (x, y, z); element 0 is the line z = 0
N5_MATRIX = ExactMatrix(((0, 0, 0, 1, 1), (0, 1, 1, 0, 0), (1, 0, -1, 0, -1)))
D22_MATRIX = ExactMatrix(((1, 1, 0, 0), (0, 0, 1, 1)))


def m_a3() -> Matroid:
    return braid_matroid(3)


def n5() -> Matroid:
    return from_matrix(N5_MATRIX)


def f7() -> Matroid:
    return pg_matroid(2, 2)


def u24() -> Matroid:
    return uniform_matroid(2, 4)


def d22() -> Matroid:
    return from_matrix(D22_MATRIX)


NAMED: dict[str, Callable[[], Matroid]] = {
    "braid2": lambda: braid_matroid(2),
    "braid3": m_a3,
    "braid4": lambda: braid_matroid(4),
    "U24": u24,
    "U35": lambda: uniform_matroid(3, 5),
    "N5": n5,
    "F7": f7,
    "pg13": lambda: pg_matroid(1, 3),
}


def corpus() -> dict[str, Matroid]:
    """The loopfree connected corpus."""
    return {name: make() for name, make in NAMED.items()}


def collineation(d: int, p: int, matrix: Sequence[Sequence[int]]) -> list[int]:
    """Permutation of PG(d, p) point indices induced by an invertible matrix over GF(p)."""
    pts = pg_points(d, p)
    index = {pt: i for i, pt in enumerate(pts)}
    perm = []
    for pt in pts:
        img = [sum(matrix[r][c] * pt[c] for c in range(d + 1)) % p for r in range(d + 1)]
        lead = next((x for x in img if x), None)
        if lead is None:
            raise MatroidError("matrix is singular over GF(p)")
        inv = pow(lead, -1, p)
        perm.append(index[tuple(x * inv % p for x in img)])
    if len(set(perm)) != len(perm):
        raise MatroidError("matrix is singular over GF(p)")
    return perm


def fano_singer_cycle() -> list[int]:
    """Multiplication by x in GF(8) = GF(2)[x]/(x^3 + x + 1).

    A point of PG(2, 2) is labelled by the integer whose binary digits are its
    coordinates; with the lexicographic point order, element ``i`` has label ``i + 1``.
    """
    perm = []
    for i in range(7):
        v = (i + 1) << 1
        if v & 0b1000:
            v ^= 0b1011
        perm.append(v - 1)
    return perm


def permutation_power(perm: Sequence[int], k: int) -> list[int]:
    out = list(range(len(perm)))
    for _ in range(k):
        out = [perm[x] for x in out]
    return out


def all_permutations(n: int):
    return itertools.permutations(range(n))
