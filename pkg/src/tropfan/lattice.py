"""Lattice of flats, building sets and nested sets.

The lattice is ordered by inclusion of index sets, with bottom element
``closure(empty)``. Flats are grouped by rank and sorted lexicographically
inside each rank; that order is used for every enumeration below.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import HypothesisError, MatroidError
from .matroid import Matroid, from_mask, lex_key, to_mask

__all__ = [
    "LatticeOfFlats",
    "BuildingSet",
    "flats",
    "maximal_chains",
    "building_set_witness",
    "is_building_set",
    "min_building_set",
    "max_building_set",
    "is_nested",
    "nested_sets",
    "maximal_nested_sets",
    "flat_key",
]

Flat = frozenset
Chain = tuple  # strictly increasing flats F_1 < ... < F_k, bottom excluded


@dataclass(frozen=True)
class LatticeOfFlats:
    matroid: Matroid
    by_rank: tuple[tuple[frozenset[int], ...], ...]

    @property
    def bottom(self) -> frozenset[int]:
        return self.by_rank[0][0]

    @property
    def top(self) -> frozenset[int]:
        return self.by_rank[-1][0]

    @cached_property
    def flats(self) -> tuple[frozenset[int], ...]:
        return tuple(f for level in self.by_rank for f in level)

    @cached_property
    def rank_of(self) -> dict[frozenset[int], int]:
        return {f: r for r, level in enumerate(self.by_rank) for f in level}

    @cached_property
    def covers(self) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
        out = []
        for r in range(len(self.by_rank) - 1):
            for lo in self.by_rank[r]:
                for hi in self.by_rank[r + 1]:
                    if lo < hi:
                        out.append((lo, hi))
        return tuple(out)

    def __len__(self) -> int:
        return len(self.flats)

    def key(self, f: frozenset[int]) -> tuple:
        return (self.rank_of[f], lex_key(f))

    def interval(self, lo: frozenset[int], hi: frozenset[int]) -> list[frozenset[int]]:
        return [f for f in self.flats if lo <= f <= hi]

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        return self.matroid.closure(s)


def flat_key(f: frozenset[int]) -> tuple[int, ...]:
    return lex_key(f)


def flats(m: Matroid) -> LatticeOfFlats:
    """All flats, grown rank by rank as closures of ``F + e``."""
    bottom = m._closure_mask(0)
    levels = [[bottom]]
    while True:
        nxt = set()
        for f in levels[-1]:
            for e in range(m.size):
                if not f >> e & 1:
                    nxt.add(m._closure_mask(f | 1 << e))
        if not nxt:
            break
        levels.append(sorted(nxt, key=lambda x: lex_key(from_mask(x))))
    by_rank = tuple(tuple(from_mask(f) for f in level) for level in levels)
    return LatticeOfFlats(m, by_rank)


def maximal_chains(lat: LatticeOfFlats) -> list[Chain]:
    """Complete flags ``F_1 < ... < F_{r+1} = E`` in lexicographic order."""
    m = lat.matroid
    if not m.is_loopfree():
        raise HypothesisError("loopfree", f"loops {lex_key(m.loops())}")
    above: dict[frozenset, list[frozenset]] = {f: [] for f in lat.flats}
    for lo, hi in lat.covers:
        above[lo].append(hi)
    out: list[Chain] = []

    def walk(f, acc):
        if f == lat.top:
            out.append(tuple(acc))
            return
        for g in above[f]:
            walk(g, acc + [g])

    walk(lat.bottom, [])
    out.sort(key=lambda c: tuple(lex_key(f) for f in c))
    return out


# building sets


@dataclass(frozen=True)
class BuildingSet:
    lattice: LatticeOfFlats
    members: tuple[frozenset[int], ...]

    def __contains__(self, f) -> bool:
        return f in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.members)


def _as_building(lat: LatticeOfFlats, g: Iterable[frozenset[int]]) -> BuildingSet:
    members = sorted({frozenset(x) for x in g}, key=lat.key)
    return BuildingSet(lat, tuple(members))


def building_set_witness(lat: LatticeOfFlats, g: Iterable[frozenset[int]]) -> frozenset[int] | None:
    """First flat ``F`` (rank, then lex) at which the join map from the product of
    intervals ``[0, X]``, ``X`` in ``max(G cap [0, F])``, onto ``[0, F]`` is not an
    order isomorphism. ``None`` if ``G`` is a building set."""
    g = {frozenset(x) for x in g}
    if lat.bottom in g:
        raise MatroidError("building set must avoid the bottom flat")
    for x in g:
        if x not in lat.rank_of:
            raise MatroidError(f"{lex_key(x)} is not a flat")
    m = lat.matroid
    for f in lat.flats:
        below = [x for x in g if x <= f]
        tops = [x for x in below if not any(x < y for y in below)]
        tops.sort(key=lat.key)
        factors = [lat.interval(lat.bottom, x) for x in tops]
        target = lat.interval(lat.bottom, f)
        elems = list(itertools.product(*factors))
        if len(elems) != len(target):
            return f
        images = []
        for tup in elems:
            u = 0
            for y in tup:
                u |= to_mask(y)
            images.append(m._closure_mask(u))
        if len(set(images)) != len(target) or any(i & ~to_mask(f) for i in images):
            return f
        for (a, ia), (b, ib) in itertools.product(zip(elems, images), repeat=2):
            le_prod = all(x <= y for x, y in zip(a, b))
            le_img = ia & ~ib == 0
            if le_prod != le_img:
                return f
    return None


def is_building_set(lat: LatticeOfFlats, g: Iterable[frozenset[int]]) -> bool:
    return building_set_witness(lat, g) is None


def min_building_set(lat: LatticeOfFlats) -> BuildingSet:
    """Flats whose restriction is connected (the unique minimal building set)."""
    m = lat.matroid
    if not m.is_loopfree():
        raise HypothesisError("loopfree", f"loops {lex_key(m.loops())}")
    g = [f for f in lat.flats if f != lat.bottom and m.restriction(f).is_connected()]
    out = _as_building(lat, g)
    assert is_building_set(lat, out.members)
    return out


def max_building_set(lat: LatticeOfFlats) -> BuildingSet:
    m = lat.matroid
    if not m.is_loopfree():
        raise HypothesisError("loopfree", f"loops {lex_key(m.loops())}")
    out = _as_building(lat, [f for f in lat.flats if f != lat.bottom])
    assert is_building_set(lat, out.members)
    return out


# nested sets


def _antichain_violation(lat: LatticeOfFlats, g: BuildingSet, s, new=None):
    """An antichain of size >= 2 in ``s`` (containing ``new`` if given) whose
    union closes to a member of ``g``."""
    s = list(s)
    m = lat.matroid
    for k in range(2, len(s) + 1):
        for combo in itertools.combinations(s, k):
            if new is not None and new not in combo:
                continue
            if any(a < b or b < a for a, b in itertools.combinations(combo, 2)):
                continue
            u = 0
            for x in combo:
                u |= to_mask(x)
            if from_mask(m._closure_mask(u)) in g:
                return combo
    return None


def is_nested(lat: LatticeOfFlats, g: BuildingSet, s: Iterable[frozenset[int]]) -> bool:
    s = [frozenset(x) for x in s]
    for x in s:
        if x not in g:
            raise MatroidError(f"{lex_key(x)} is not in the building set")
    return _antichain_violation(lat, g, s) is None


def _nested_key(lat: LatticeOfFlats, s) -> tuple:
    return tuple(lex_key(f) for f in sorted(s, key=lat.key))


def nested_sets(
    lat: LatticeOfFlats, g: BuildingSet, max_size: int | None = None
) -> Iterator[tuple[frozenset[int], ...]]:
    """All nested sets including the empty one, members sorted by (rank, lex),
    in lexicographic order of those member lists."""
    members = list(g.members)
    found: list[tuple] = []

    def dfs(start, acc):
        found.append(tuple(acc))
        if max_size is not None and len(acc) >= max_size:
            return
        for i in range(start, len(members)):
            x = members[i]
            if _antichain_violation(lat, g, acc + [x], new=x) is None:
                dfs(i + 1, acc + [x])

    dfs(0, [])
    found.sort(key=lambda s: _nested_key(lat, s))
    return iter(found)


def maximal_nested_sets(lat: LatticeOfFlats, g: BuildingSet) -> list[tuple[frozenset[int], ...]]:
    out = []
    for s in nested_sets(lat, g):
        ss = set(s)
        if not any(
            x not in ss and _antichain_violation(lat, g, list(s) + [x], new=x) is None
            for x in g.members
        ):
            out.append(s)
    return out
