"""Compatibility of integer linear maps with the Bergman fan.

A candidate map is an (n+1)x(n+1) integer matrix ``A`` acting on column
vectors of R^{n+1}. It descends to R^{n+1}/R*1 when ``A @ 1 = c * 1``.

Chart convention: if a dominant map pulls back the coordinate ``x_i = l_i/l_0``
to ``lambda_i * prod_j x_j ** a[i][j]`` (i, j = 1..n), then a cocharacter with
exponents ``w`` goes to ``a @ w``. So the map on cocharacters has matrix ``a``
itself; ``a.T`` is the action on characters. ``from_chart`` lifts that n x n
matrix to the (n+1)x(n+1) form used here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import MatroidError
from .fans import Fan, bergman_fan, failing_circuit, indicator, require_fan_hypotheses
from .lattice import flats
from .linalg import det
from .matroid import Matroid, lex_key
from .verify import VerificationReport

__all__ = [
    "IntegerLinearMap",
    "CompatibilityReport",
    "descends_to_quotient",
    "quotient_scale",
    "permutation_map",
    "from_chart",
    "is_matroid_automorphism",
    "check_fan_compatibility",
    "maps_into_trop",
]


def quotient_scale(matrix: Sequence[Sequence[int]]) -> int | None:
    """``c`` with ``A @ 1 == c * 1``, or ``None`` if ``A @ 1`` is not a multiple of ``1``."""
    n = len(matrix)
    if n == 0 or any(len(r) != n for r in matrix):
        raise MatroidError("map matrix must be square and nonempty")
    sums = {sum(r) for r in matrix}
    return sums.pop() if len(sums) == 1 else None


def descends_to_quotient(matrix: Sequence[Sequence[int]]) -> bool:
    return quotient_scale(matrix) is not None


@dataclass(frozen=True)
class IntegerLinearMap:
    matrix: tuple[tuple[int, ...], ...]
    scale_on_ones: int = field(init=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if any(x != y for r, r0 in zip(rows, self.matrix) for x, y in zip(r, r0)):
            raise MatroidError("map entries must be integers")
        c = quotient_scale(rows)
        if c is None:
            raise MatroidError("A @ 1 is not proportional to 1; the map does not descend to the quotient")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "scale_on_ones", c)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> tuple:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    def __matmul__(self, other: "IntegerLinearMap") -> "IntegerLinearMap":
        n = self.size
        cols = list(zip(*other.matrix))
        return IntegerLinearMap(
            tuple(tuple(sum(a * b for a, b in zip(self.matrix[i], cols[j])) for j in range(n)) for i in range(n))
        )

    def quotient_matrix(self) -> list[list[int]]:
        """Matrix of the induced map on the quotient lattice in the basis ``e_1, ..., e_n``."""
        a = self.matrix
        n = self.size
        return [[a[i][j] - a[0][j] for j in range(1, n)] for i in range(1, n)]

    def quotient_det(self) -> int:
        q = self.quotient_matrix()
        return int(det(q)) if q else 1

    @property
    def invertible(self) -> bool:
        return self.quotient_det() != 0

    @property
    def unimodular(self) -> bool:
        return abs(self.quotient_det()) == 1


def permutation_map(perm: Sequence[int]) -> IntegerLinearMap:
    """Matrix sending ``e_i`` to ``e_{perm[i]}``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise MatroidError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    return IntegerLinearMap(tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n)))


def from_chart(chart: Sequence[Sequence[int]]) -> IntegerLinearMap:
    """Lift an n x n map on the chart ``w_0 = 0`` to an (n+1)x(n+1) map with ``A @ 1 = 0``."""
    n = len(chart)
    if any(len(r) != n for r in chart):
        raise MatroidError("chart matrix must be square")
    rows = [[0] * (n + 1)]
    for r in chart:
        rows.append([-sum(r)] + [int(x) for x in r])
    return IntegerLinearMap(tuple(tuple(r) for r in rows))


def is_matroid_automorphism(m: Matroid, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(m.size)):
        raise MatroidError(f"{list(perm)} is not a permutation of 0..{m.size - 1}")
    image = {frozenset(perm[e] for e in b) for b in m.bases}
    return image == set(m.bases)


@dataclass
class CompatibilityReport:
    passed: bool
    targets: list[int | None]
    witnesses: list[dict[str, Any]]
    invertible: bool
    unimodular: bool
    scale_on_ones: int

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": "tropfan/report/v1",
            "check": "endo",
            "verdict": self.verdict,
            "targets": self.targets,
            "witnesses": self.witnesses,
            "stats": {
                "cones": len(self.targets),
                "invertible": self.invertible,
                "unimodular": self.unimodular,
                "scale_on_ones": self.scale_on_ones,
            },
        }


def check_fan_compatibility(m: Matroid, a: IntegerLinearMap, fan: Fan | None = None) -> CompatibilityReport:
    """Does every maximal Bergman cone map into a single Bergman cone?

    For each cone the images of all chain generators are located; Bergman
    cones are convex, so if one cone holds every image it holds the image cone.
    """
    if a.size != m.size:
        raise MatroidError(f"map of size {a.size} for ground set of size {m.size}")
    require_fan_hypotheses(m)
    fan = fan or bergman_fan(m)
    n = m.size
    targets: list[int | None] = []
    witnesses = []
    for idx, cone in enumerate(fan.cones):
        gens = sorted({f for c in cone.member_chains for f in c if len(f) != n}, key=lambda f: (len(f), lex_key(f)))
        common = set(range(len(fan.cones)))
        per_gen = []
        for f in gens:
            img = a(indicator(n, f))
            holders = {j for j, b in enumerate(fan.cones) if b.contains(img)}
            per_gen.append((f, img, holders))
            common &= holders
        if common:
            targets.append(min(common))
            continue
        targets.append(None)
        bad = next(((f, img) for f, img, h in per_gen if not h), None)
        if bad is not None:
            f, img = bad
            witnesses.append(
                {
                    "cone": idx,
                    "kind": "image_outside_trop",
                    "generator": list(lex_key(f)),
                    "image": list(img),
                    "circuit": list(lex_key(failing_circuit(m, img))),
                }
            )
        else:
            witnesses.append(
                {
                    "cone": idx,
                    "kind": "no_common_cone",
                    "generators": [list(lex_key(f)) for f, _, _ in per_gen],
                    "holders": [sorted(h) for _, _, h in per_gen],
                }
            )
    return CompatibilityReport(not witnesses, targets, witnesses, a.invertible, a.unimodular, a.scale_on_ones)


def maps_into_trop(m: Matroid, a: IntegerLinearMap, fan: Fan | None = None) -> VerificationReport:
    """Images of all fine-subdivision rays lie in trop(M), and the map is fan-compatible."""
    if a.size != m.size:
        raise MatroidError(f"map of size {a.size} for ground set of size {m.size}")
    require_fan_hypotheses(m)
    lat = flats(m)
    n = m.size
    witnesses = []
    rays = [f for f in lat.flats if f != lat.bottom and len(f) != n]
    for f in rays:
        img = a(indicator(n, f))
        c = failing_circuit(m, img)
        if c is not None:
            witnesses.append({"generator": list(lex_key(f)), "image": list(img), "circuit": list(lex_key(c))})
    compat = check_fan_compatibility(m, a, fan or bergman_fan(m, lat=lat))
    witnesses.extend({"compatibility": w} for w in compat.witnesses)
    return VerificationReport(
        "into_trop",
        not witnesses,
        witnesses,
        {"rays": len(rays), "compatible": compat.passed, "invertible": a.invertible, "unimodular": a.unimodular},
    )
