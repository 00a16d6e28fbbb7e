"""Exact row reduction over the rationals and prime fields.

Matrices are plain lists of rows. Over ``Q`` entries are ``Fraction``; over
``GF(p)`` they are ints in ``[0, p)``. Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["rref", "rank", "is_prime", "canonical_rational", "parse_rational"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def canonical_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(s: str) -> Fraction:
    """Parse ``"-1"``, ``"2/3"`` etc.; reject anything that is not lowest-terms canonical."""
    if not isinstance(s, str):
        raise ValueError(f"rational entries must be strings, got {s!r}")
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {s!r}") from exc
    if str(x) != s:
        raise ValueError(f"non-canonical rational {s!r} (expected {str(x)!r})")
    return x


def _normalize(rows: Sequence[Sequence], p: int | None) -> list[list]:
    if p is None:
        return [[Fraction(x) for x in row] for row in rows]
    return [[int(x) % p for x in row] for row in rows]


def rref(rows: Sequence[Sequence], p: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are dropped, so the result has exactly ``rank`` rows. The RREF of a
    row space is unique, which is what makes it usable as a canonical form.
    """
    m = _normalize(rows, p)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        if p is None:
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
        else:
            inv = pow(m[r][c], -1, p)
            m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                if p is None:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                else:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], p: int | None = None) -> int:
    return len(rref(rows, p)[1])


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by elimination."""
    m = _normalize(rows, None)
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d
