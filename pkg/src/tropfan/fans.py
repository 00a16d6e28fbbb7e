"""Tropical linear spaces, nested-set fans and the Bergman fan.

All fans live in R^{n+1}/R*1. A class in the quotient is represented by the
vector whose coordinate 0 is zero; every linear span computed here adjoins
the all-ones vector first, so no chart choice leaks into comparisons.

The Bergman fan is assembled from the fine subdivision: two maximal chains of
flats land in the same Bergman cone exactly when their transversal-basis
families (bases meeting every difference block once) agree, because an
interior point of a chain cone is maximized on the polytope face spanned by
those bases.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import HypothesisError, MatroidError
from .lattice import (
    BuildingSet,
    LatticeOfFlats,
    flats,
    max_building_set,
    maximal_chains,
    maximal_nested_sets,
    min_building_set,
)
from .linalg import rank as matrix_rank
from .linalg import rref
from .matroid import Matroid, lex_key

__all__ = [
    "normalize",
    "indicator",
    "trop_contains",
    "failing_circuit",
    "chain_partition",
    "transversal_bases",
    "chain_cone_contains",
    "simplicial_contains",
    "SpanCanonicalForm",
    "cone_span",
    "interior_point",
    "SimplicialCone",
    "BergmanCone",
    "Fan",
    "nested_fan",
    "fine_subdivision",
    "min_nested_fan",
    "matroid_polytope_vertices",
    "polytope_dim",
    "degeneration_matroid",
    "maximizing_bases",
    "bergman_fan",
    "require_fan_hypotheses",
]

Vector = tuple  # exact coordinates, Fraction or int
Chain = tuple


def normalize(v: Sequence) -> tuple[Fraction, ...]:
    """Representative of ``v`` mod R*1 with coordinate 0 equal to 0."""
    v = [Fraction(x) for x in v]
    return tuple(x - v[0] for x in v)


def indicator(n: int, s: Iterable[int]) -> tuple[int, ...]:
    s = set(s)
    return tuple(int(i in s) for i in range(n))


def primitive_ray(v: Sequence) -> tuple[int, ...]:
    """Normalized, cleared of denominators, divided by the gcd. Orientation is kept."""
    v = normalize(v)
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    if g == 0:
        raise MatroidError("zero vector mod lineality is not a ray")
    return tuple(x // g for x in ints)


def _require_loopfree(m: Matroid) -> None:
    if not m.is_loopfree():
        raise HypothesisError("loopfree", f"elements {lex_key(m.loops())} are loops")


def require_fan_hypotheses(m: Matroid) -> None:
    """Fan constructions need a loopfree, connected matroid from an essential arrangement."""
    _require_loopfree(m)
    if m.essential is False:
        raise HypothesisError("essential", "matrix does not have full row rank")
    k = m.num_components()
    if k != 1:
        raise HypothesisError("connected", f"matroid has {k} connected components")


# tropical linear space


def failing_circuit(m: Matroid, v: Sequence) -> frozenset[int] | None:
    """A circuit on which the minimum of ``v`` is attained only once."""
    _require_loopfree(m)
    if len(v) != m.size:
        raise MatroidError(f"vector of length {len(v)} for ground set of size {m.size}")
    for c in m.circuits():
        vals = [v[i] for i in c]
        lo = min(vals)
        if vals.count(lo) < 2:
            return c
    return None


def trop_contains(m: Matroid, v: Sequence) -> bool:
    return failing_circuit(m, v) is None


# chains of flats


def chain_partition(m: Matroid, chain: Chain) -> tuple[frozenset[int], ...]:
    """Difference blocks ``F_1, F_2 - F_1, ...`` of a maximal chain."""
    chain = tuple(frozenset(f) for f in chain)
    prev = frozenset()
    for k, f in enumerate(chain, start=1):
        if not prev < f or not m.is_flat(f) or m.rank(f) != k:
            raise MatroidError(f"not a maximal chain of flats: {[lex_key(x) for x in chain]}")
        prev = f
    if not chain or chain[-1] != m.ground:
        raise MatroidError("maximal chain must end at the ground set")
    blocks = []
    prev = frozenset()
    for f in chain:
        blocks.append(f - prev)
        prev = f
    return tuple(blocks)


def transversal_bases(m: Matroid, blocks: Sequence[Iterable[int]]) -> tuple[frozenset[int], ...]:
    """Bases meeting every block in exactly one element."""
    blocks = [frozenset(b) for b in blocks]
    seen: set[int] = set()
    for b in blocks:
        if not b or seen & b:
            raise MatroidError("blocks must be nonempty and pairwise disjoint")
        seen |= b
    if seen != set(range(m.size)):
        raise MatroidError("blocks must cover the ground set")
    if len(blocks) != m.rank():
        raise MatroidError(f"{len(blocks)} blocks for a matroid of rank {m.rank()}")
    return tuple(bs for bs in m.bases if all(len(bs & b) == 1 for b in blocks))


def chain_cone_contains(chain: Chain, v: Sequence) -> bool:
    """Closed chain cone membership.

    ``v = sum_j c_j v_{F_j} + mu*1`` with ``c_j >= 0`` gives value
    ``sum_{k >= j} c_k + mu`` on block ``j``, so membership is: constant on
    each block, block values weakly decreasing along the chain.
    """
    prev = frozenset()
    last = None
    for f in chain:
        block = frozenset(f) - prev
        prev = frozenset(f)
        vals = {v[i] for i in block}
        if len(vals) != 1:
            return False
        (val,) = vals
        if last is not None and val > last:
            return False
        last = val
    return len(prev) == len(v)


def simplicial_contains(generators: Sequence[Sequence], v: Sequence) -> bool:
    """Membership in ``cone(generators) + R*1`` for linearly independent generators.

    Solved exactly: the coefficients are unique, so membership is their sign.
    """
    n = len(v)
    gens = [list(g) for g in generators] + [[1] * n]
    # columns = generators, augmented with v
    aug = [[g[i] for g in gens] + [v[i]] for i in range(n)]
    red, piv = rref(aug)
    k = len(gens)
    if k in piv:
        return False
    if len(piv) != k:
        raise MatroidError("generators are not linearly independent mod lineality")
    coeffs = [red[i][k] for i in range(k)]
    return all(c >= 0 for c in coeffs[:-1])


# spans


@dataclass(frozen=True)
class SpanCanonicalForm:
    """RREF of a set of generators together with the all-ones vector."""

    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]


def span_of(n: int, generators: Iterable[Sequence]) -> SpanCanonicalForm:
    rows = [list(g) for g in generators] + [[1] * n]
    red, _ = rref(rows)
    return SpanCanonicalForm(tuple(tuple(r) for r in red))


def _chain_generators(n: int, chain: Chain) -> list[tuple[int, ...]]:
    return [indicator(n, f) for f in chain if len(f) != n]


def cone_span(n: int, cone) -> SpanCanonicalForm:
    """Span (lineality included) of a chain, a ``SimplicialCone`` or a ``BergmanCone``."""
    if isinstance(cone, BergmanCone):
        gens = [g for c in cone.member_chains for g in _chain_generators(n, c)]
    elif isinstance(cone, SimplicialCone):
        gens = _chain_generators(n, cone.flats)
    else:
        gens = _chain_generators(n, cone)
    return span_of(n, gens)


def interior_point(n: int, cone) -> tuple[Fraction, ...]:
    """Sum of the ray generators of the cone (of its lex-first chain for Bergman cones)."""
    if isinstance(cone, BergmanCone):
        flats_ = cone.member_chains[0]
    elif isinstance(cone, SimplicialCone):
        flats_ = cone.flats
    else:
        flats_ = cone
    total = [0] * n
    for g in _chain_generators(n, flats_):
        total = [a + b for a, b in zip(total, g)]
    return normalize(total)


# fans


@dataclass(frozen=True)
class SimplicialCone:
    flats: tuple[frozenset[int], ...]
    rays: tuple[int, ...]


@dataclass(frozen=True)
class BergmanCone:
    member_chains: tuple[Chain, ...]
    bases: tuple[frozenset[int], ...]
    rays: tuple[int, ...]

    @property
    def partition_sets(self) -> tuple[frozenset[frozenset[int]], ...]:
        """Distinct unordered block families among the member chains."""
        out = []
        for c in self.member_chains:
            prev = frozenset()
            blocks = []
            for f in c:
                blocks.append(f - prev)
                prev = f
            fam = frozenset(blocks)
            if fam not in out:
                out.append(fam)
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        """Union of the member chain cones."""
        return any(chain_cone_contains(c, v) for c in self.member_chains)

    def contains_by_face(self, m: Matroid, v: Sequence) -> bool:
        """Closed normal cone of the face spanned by ``bases``: each of them maximizes
        ``<v, e_B>`` over all bases of ``m``. Independent of the chain decomposition."""
        return self.contains_face(maximizing_bases(m, v))

    def contains_face(self, face: frozenset[frozenset[int]]) -> bool:
        return all(b in face for b in self.bases)


def maximizing_bases(m: Matroid, v: Sequence) -> frozenset[frozenset[int]]:
    """Bases ``B`` maximizing ``<v, e_B>``: the vertex set of the face selected by ``v``."""
    vals = [sum(v[i] for i in b) for b in m.bases]
    top = max(vals)
    return frozenset(b for b, x in zip(m.bases, vals) if x == top)


@dataclass(frozen=True)
class Fan:
    n: int
    rays: tuple[tuple[int, ...], ...]
    cones: tuple
    lineality_dim: int

    @property
    def maximal_cones(self) -> tuple:
        return self.cones

    def contains(self, v: Sequence) -> bool:
        return any(self.cone_contains(c, v) for c in self.cones)

    def cone_contains(self, cone, v: Sequence) -> bool:
        if isinstance(cone, BergmanCone):
            return cone.contains(v)
        return simplicial_contains([indicator(self.n, f) for f in cone.flats if len(f) != self.n], v)


def _ray_table(n: int, lat: LatticeOfFlats, flats_: Iterable[frozenset[int]]):
    chosen = sorted({f for f in flats_ if len(f) != n}, key=lat.key)
    return {f: i for i, f in enumerate(chosen)}, tuple(primitive_ray(indicator(n, f)) for f in chosen)


def _check_building(lat: LatticeOfFlats, g: BuildingSet) -> None:
    from .lattice import building_set_witness

    w = building_set_witness(lat, g.members)
    if w is not None:
        raise MatroidError(f"not a building set: fails at flat {lex_key(w)}")


def nested_fan(m: Matroid, g: BuildingSet | None = None, lat: LatticeOfFlats | None = None) -> Fan:
    """Fan whose maximal cones are ``cone(v_F : F in S) + R*1`` for maximal nested sets ``S``."""
    _require_loopfree(m)
    lat = lat or (g.lattice if g is not None else flats(m))
    if g is None:
        g = min_building_set(lat)
    else:
        _check_building(lat, g)
    n = m.size
    maximal = maximal_nested_sets(lat, g)
    index, rays = _ray_table(n, lat, (f for s in maximal for f in s))
    cones = []
    dims = set()
    for s in maximal:
        gens = [indicator(n, f) for f in s if len(f) != n]
        d = matrix_rank(gens + [[1] * n]) - 1
        assert d == len(gens), "nested set cone is not simplicial"
        dims.add(d)
        cones.append(SimplicialCone(tuple(s), tuple(sorted(index[f] for f in s if len(f) != n))))
    assert dims <= {m.rank() - 1}, f"nested fan not pure of dimension r(M)-1: {dims}"
    return Fan(n, rays, tuple(cones), n - polytope_dim(m))


def fine_subdivision(m: Matroid, lat: LatticeOfFlats | None = None) -> Fan:
    lat = lat or flats(m)
    _require_loopfree(m)
    return nested_fan(m, max_building_set(lat), lat)


def min_nested_fan(m: Matroid, lat: LatticeOfFlats | None = None) -> Fan:
    lat = lat or flats(m)
    _require_loopfree(m)
    return nested_fan(m, min_building_set(lat), lat)


# matroid polytope


def matroid_polytope_vertices(m: Matroid) -> list[tuple[int, ...]]:
    return [indicator(m.size, b) for b in m.bases]


def polytope_dim(m: Matroid) -> int:
    """Dimension of the affine span of the basis incidence vectors."""
    verts = matroid_polytope_vertices(m)
    v0 = verts[0]
    diffs = [[a - b for a, b in zip(v, v0)] for v in verts[1:]]
    return matrix_rank(diffs) if diffs else 0


def degeneration_matroid(m: Matroid, w: Sequence) -> Matroid:
    """Matroid of the bases maximizing ``<w, e_B>`` (the face of the polytope picked out by ``w``)."""
    if len(w) != m.size:
        raise MatroidError(f"vector of length {len(w)} for ground set of size {m.size}")
    out = Matroid(m.size, tuple(maximizing_bases(m, w)), m.labels)
    assert out.exchange_violation() is None
    return out


def _is_bergman_ray(m: Matroid, f: frozenset[int]) -> bool:
    # the smallest Groebner cone containing v_F has dimension n+1 - dim(face)
    face = degeneration_matroid(m, indicator(m.size, f))
    return m.size - polytope_dim(face) == 2


def bergman_fan(m: Matroid, threads: int | None = None, lat: LatticeOfFlats | None = None) -> Fan:
    """Bergman fan as groups of maximal chains sharing a transversal-basis family.

    Cones are ordered by their lexicographically first member chain. The
    ``rays`` of a cone are its extreme rays among the chain generators.
    """
    require_fan_hypotheses(m)
    lat = lat or flats(m)
    n = m.size
    chains = maximal_chains(lat)

    def work(c):
        return transversal_bases(m, chain_partition(m, c))

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            families = list(ex.map(work, chains))
    else:
        families = [work(c) for c in chains]

    groups: dict[tuple, list[Chain]] = {}
    for c, fam in zip(chains, families):
        groups.setdefault(fam, []).append(c)

    candidate = {f for c in chains for f in c if len(f) != n}
    ray_flats = [f for f in sorted(candidate, key=lat.key) if _is_bergman_ray(m, f)]
    index = {f: i for i, f in enumerate(ray_flats)}
    rays = tuple(primitive_ray(indicator(n, f)) for f in ray_flats)

    cones = []
    for fam, members in groups.items():
        got = degeneration_matroid(m, interior_point(n, members[0])).bases
        assert got == fam, "interior point is not maximized on the transversal face"
        ray_idx = sorted({index[f] for c in members for f in c if f in index})
        cones.append(BergmanCone(tuple(members), fam, tuple(ray_idx)))
    return Fan(n, rays, tuple(cones), n - polytope_dim(m))
