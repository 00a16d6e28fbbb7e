"""Instance checks for the fan theorems.

Each check returns a ``VerificationReport``; a failing report always carries at
least one witness, and ``replay`` re-derives the failure from the witness alone.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .fans import (
    BergmanCone,
    Fan,
    bergman_fan,
    chain_cone_contains,
    cone_span,
    indicator,
    interior_point,
    maximizing_bases,
    min_nested_fan,
    require_fan_hypotheses,
    trop_contains,
)
from .lattice import LatticeOfFlats, flats, maximal_chains, min_building_set
from .matroid import Matroid, lex_key

__all__ = [
    "VerificationReport",
    "lcg_vectors",
    "span_collisions",
    "verify_distinct_spans",
    "fs_criterion",
    "fans_equal_min_vs_bergman",
    "support_consistency",
    "verify_refinement",
    "replay",
]


@dataclass
class VerificationReport:
    check: str
    passed: bool
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and not self.witnesses:
            raise ValueError(f"{self.check}: failing report without a witness")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": "tropfan/report/v1",
            "check": self.check,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "stats": self.stats,
        }


def _sets(xs) -> list[list[int]]:
    return [list(lex_key(x)) for x in xs]


# Knuth's MMIX constants; the top bits are used since low LCG bits are weak.
_LCG_A = 6364136223846793005
_LCG_C = 1442695040888963407
_LCG_M = 1 << 64


def lcg_vectors(n: int, box: int, count: int, seed: int) -> Iterator[tuple[int, ...]]:
    """``count`` integer vectors in ``[-box, box]^n`` from a 64-bit LCG seeded with ``seed``."""
    state = seed % _LCG_M
    width = 2 * box + 1
    for _ in range(count):
        v = []
        for _ in range(n):
            state = (_LCG_A * state + _LCG_C) % _LCG_M
            v.append((state >> 33) % width - box)
        yield tuple(v)


def span_collisions(n: int, cones: Sequence) -> list[tuple[int, int]]:
    spans = [cone_span(n, c) for c in cones]
    return [(i, j) for i, j in itertools.combinations(range(len(spans)), 2) if spans[i] == spans[j]]


def _cone_json(cone) -> dict[str, Any]:
    if isinstance(cone, BergmanCone):
        return {"chains": [_sets(c) for c in cone.member_chains]}
    if hasattr(cone, "flats"):
        return {"flats": _sets(cone.flats)}
    return {"chain": _sets(cone)}


def verify_distinct_spans(m: Matroid, fan: Fan | None = None) -> VerificationReport:
    """Distinct maximal cones of the Bergman fan (or of ``fan``) span distinct spaces."""
    require_fan_hypotheses(m)
    fan = fan or bergman_fan(m)
    pairs = span_collisions(m.size, fan.cones)
    witnesses = [
        {"cones": [i, j], "cone_a": _cone_json(fan.cones[i]), "cone_b": _cone_json(fan.cones[j])}
        for i, j in pairs
    ]
    return VerificationReport(
        "spans",
        not pairs,
        witnesses,
        {"cones": len(fan.cones), "distinct_spans": len({cone_span(m.size, c) for c in fan.cones})},
    )


def fs_criterion(m: Matroid, lat: LatticeOfFlats | None = None) -> VerificationReport:
    """``M[F, G]`` connected for every flat ``F`` strictly below a connected flat ``G``."""
    lat = lat or flats(m)
    witnesses = []
    pairs = 0
    for g in min_building_set(lat):
        for f in lat.flats:
            if not f < g:
                continue
            pairs += 1
            minor = m.minor_interval(f, g)
            if not minor.is_connected():
                witnesses.append(
                    {"F": list(lex_key(f)), "G": list(lex_key(g)), "components": minor.num_components()}
                )
    return VerificationReport("fs", not witnesses, witnesses, {"pairs": pairs})


def fans_equal_min_vs_bergman(m: Matroid, lat: LatticeOfFlats | None = None) -> VerificationReport:
    """Direct comparison of the minimal nested-set fan with the Bergman fan.

    Every minimal nested cone sits inside one Bergman cone; the fans agree iff the
    counts match and no two minimal nested cones share a Bergman cone.
    """
    require_fan_hypotheses(m)
    lat = lat or flats(m)
    smin = min_nested_fan(m, lat)
    berg = bergman_fan(m, lat=lat)
    owner: dict[int, int] = {}
    witnesses = []
    for i, cone in enumerate(smin.cones):
        p = interior_point(m.size, cone)
        hits = [j for j, b in enumerate(berg.cones) if b.contains(p)]
        if len(hits) != 1:
            witnesses.append({"nested": _sets(cone.flats), "bergman_cones": hits})
            continue
        j = hits[0]
        if j in owner:
            witnesses.append(
                {
                    "nested_a": _sets(smin.cones[owner[j]].flats),
                    "nested_b": _sets(cone.flats),
                    "bergman_cone": j,
                }
            )
        else:
            owner[j] = i
    counts_equal = len(smin.cones) == len(berg.cones)
    if not counts_equal and not witnesses:
        witnesses.append({"min_cones": len(smin.cones), "bergman_cones": len(berg.cones)})
    return VerificationReport(
        "fans",
        counts_equal and not witnesses,
        witnesses,
        {"min_cones": len(smin.cones), "bergman_cones": len(berg.cones)},
    )


def support_consistency(
    m: Matroid, box: int = 3, samples: int = 1000, seed: int = 0, lat: LatticeOfFlats | None = None
) -> VerificationReport:
    """Circuit membership vs fan membership on seeded samples.

    Fine-subdivision membership uses the closed-form chain test; Bergman
    membership uses the face description of each cone, so the three routes
    share no code beyond the matroid itself.
    """
    require_fan_hypotheses(m)
    lat = lat or flats(m)
    chains = maximal_chains(lat)
    berg = bergman_fan(m, lat=lat)
    witnesses = []
    inside = 0
    for v in lcg_vectors(m.size, box, samples, seed):
        by_circuits = trop_contains(m, v)
        by_fine = any(chain_cone_contains(c, v) for c in chains)
        face = maximizing_bases(m, v)
        by_berg = any(b.contains_face(face) for b in berg.cones)
        inside += by_circuits
        if not by_circuits == by_fine == by_berg:
            witnesses.append(
                {"vector": list(v), "circuits": by_circuits, "fine": by_fine, "bergman": by_berg}
            )
    return VerificationReport(
        "support",
        not witnesses,
        witnesses,
        {"samples": samples, "box": box, "seed": seed, "in_trop": inside, "fine_cones": len(chains)},
    )


def verify_refinement(m: Matroid, fan: Fan | None = None, lat: LatticeOfFlats | None = None) -> VerificationReport:
    """Each maximal chain cone and each minimal nested cone lies in exactly one Bergman cone.

    Containment is tested generator-wise against the convex (face) description
    of the Bergman cones, and must agree with the cone that lists the chain.
    """
    require_fan_hypotheses(m)
    lat = lat or flats(m)
    fan = fan or bergman_fan(m, lat=lat)
    n = m.size
    witnesses = []

    def holders(gens):
        faces = [maximizing_bases(m, g) for g in gens]
        return [j for j, b in enumerate(fan.cones) if all(b.contains_face(f) for f in faces)]

    chains = maximal_chains(lat)
    for c in chains:
        gens = [indicator(n, f) for f in c]
        listed = [j for j, b in enumerate(fan.cones) if c in b.member_chains]
        hold = holders(gens)
        if len(listed) != 1 or hold != listed:
            witnesses.append({"chain": _sets(c), "listed_in": listed, "contained_in": hold})
    smin = min_nested_fan(m, lat)
    for cone in smin.cones:
        hold = holders([indicator(n, f) for f in cone.flats])
        if len(hold) != 1:
            witnesses.append({"nested": _sets(cone.flats), "contained_in": hold})
    return VerificationReport(
        "refine",
        not witnesses,
        witnesses,
        {"chains": len(chains), "min_cones": len(smin.cones), "bergman_cones": len(fan.cones)},
    )


def replay(m: Matroid, check: str, witness: dict[str, Any], fan: Fan | None = None) -> bool:
    """Re-derive a reported failure from its witness; ``True`` if it reproduces."""
    n = m.size
    if check == "fs":
        f, g = frozenset(witness["F"]), frozenset(witness["G"])
        return m.restriction(g).is_connected() and not m.minor_interval(f, g).is_connected()
    if check == "spans":
        fan = fan or bergman_fan(m)
        i, j = witness["cones"]
        return cone_span(n, fan.cones[i]) == cone_span(n, fan.cones[j])
    if check == "fans":
        if "nested_a" not in witness:
            return len(min_nested_fan(m).cones) != len(bergman_fan(m).cones)
        berg = fan or bergman_fan(m)
        cone = berg.cones[witness["bergman_cone"]]
        pts = [
            interior_point(n, tuple(frozenset(x) for x in witness[k])) for k in ("nested_a", "nested_b")
        ]
        return all(cone.contains(p) for p in pts)
    if check == "support":
        v = witness["vector"]
        chains = maximal_chains(flats(m))
        berg = fan or bergman_fan(m)
        by_berg = any(b.contains_by_face(m, v) for b in berg.cones)
        return len({trop_contains(m, v), any(chain_cone_contains(c, v) for c in chains), by_berg}) > 1
    if check == "refine":
        fan = fan or bergman_fan(m)
        if "chain" in witness:
            c = tuple(frozenset(x) for x in witness["chain"])
            listed = [j for j, b in enumerate(fan.cones) if c in b.member_chains]
            gens = [indicator(n, f) for f in c]
            hold = [j for j, b in enumerate(fan.cones) if all(b.contains_by_face(m, g) for g in gens)]
            return len(listed) != 1 or hold != listed
        gens = [indicator(n, x) for x in witness["nested"]]
        return len([b for b in fan.cones if all(b.contains_by_face(m, g) for g in gens)]) != 1
    raise ValueError(f"unknown check {check!r}")
