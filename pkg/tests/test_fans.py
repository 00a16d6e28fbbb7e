import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropfan import corpus
from tropfan.errors import HypothesisError, MatroidError
from tropfan.fans import (
    BergmanCone,
    bergman_fan,
    chain_cone_contains,
    chain_partition,
    cone_span,
    degeneration_matroid,
    failing_circuit,
    fine_subdivision,
    indicator,
    interior_point,
    matroid_polytope_vertices,
    maximizing_bases,
    min_nested_fan,
    nested_fan,
    normalize,
    polytope_dim,
    primitive_ray,
    simplicial_contains,
    span_of,
    transversal_bases,
    trop_contains,
)
from tropfan.lattice import flats, max_building_set, maximal_chains, min_building_set
from tropfan.matroid import from_bases, uniform_matroid

S = frozenset
E6 = S(range(6))
C05 = (S({0}), S({0, 5}), E6)
C50 = (S({5}), S({0, 5}), E6)


def e(i, n=6, s=1):
    return tuple(s * int(j == i) for j in range(n))


# tropical linear space


def test_trop_examples(m_a3):
    assert trop_contains(m_a3, (0,) * 6)
    assert trop_contains(m_a3, e(0))
    assert not trop_contains(m_a3, e(0, s=-1))
    assert failing_circuit(m_a3, e(0, s=-1)) == S({0, 1, 3})


def test_trop_is_translation_invariant(m_a3):
    v = (3, 1, 1, 1, 1, 2)
    assert trop_contains(m_a3, v) == trop_contains(m_a3, tuple(x - 7 for x in v))


def test_trop_rejects_loops_and_bad_length(m_a3):
    with pytest.raises(HypothesisError):
        trop_contains(from_bases(2, [[0]]), (0, 0))
    with pytest.raises(MatroidError):
        trop_contains(m_a3, (0, 0))


# chains


def test_chain_partition_examples(m_a3):
    assert chain_partition(m_a3, C05) == (S({0}), S({5}), S({1, 2, 3, 4}))
    assert chain_partition(m_a3, C50) == (S({5}), S({0}), S({1, 2, 3, 4}))
    u = uniform_matroid(2, 3)
    assert chain_partition(u, (S({0}), S(range(3)))) == (S({0}), S({1, 2}))


def test_chain_partition_rejects_non_maximal(m_a3):
    with pytest.raises(MatroidError):
        chain_partition(m_a3, (S({0}), E6))
    with pytest.raises(MatroidError):
        chain_partition(m_a3, (S({0}), S({0, 1}), E6))


def brute_transversals(m, blocks):
    return {b for b in m.bases if all(len(b & blk) == 1 for blk in blocks)}


def test_transversal_examples(m_a3):
    blocks = (S({0}), S({5}), S({1, 2, 3, 4}))
    fam = transversal_bases(m_a3, blocks)
    # {0,5,x}: e0, e1-e2 and any of e1, e2, e0-e1, e0-e2 are independent
    assert set(fam) == {S({0, 5, x}) for x in (1, 2, 3, 4)} == brute_transversals(m_a3, blocks)
    assert transversal_bases(uniform_matroid(3, 3), [{0}, {1}, {2}]) == (S({0, 1, 2}),)
    assert transversal_bases(m_a3, chain_partition(m_a3, C50)) == fam


def test_transversal_rejects_bad_partition(m_a3):
    with pytest.raises(MatroidError):
        transversal_bases(m_a3, [{0}, {1, 2}, {3, 4}])
    with pytest.raises(MatroidError):
        transversal_bases(m_a3, [{0, 1}, {1, 2, 5}, {3, 4}])


@pytest.mark.parametrize("name", ["braid3", "F7", "N5", "U35"])
def test_transversals_match_brute_force(full_corpus, name):
    m = full_corpus[name]
    for c in maximal_chains(flats(m)):
        blocks = chain_partition(m, c)
        assert set(transversal_bases(m, blocks)) == brute_transversals(m, blocks)


def test_chain_cone_examples():
    assert chain_cone_contains(C05, indicator(6, {0}))
    assert chain_cone_contains(C05, (2, 0, 0, 0, 0, 1))
    assert not chain_cone_contains(C05, e(1))
    assert chain_cone_contains(C05, (5, 5, 5, 5, 5, 5))


chain_and_coeffs = st.tuples(
    st.sampled_from(maximal_chains(flats(corpus.m_a3()))),
    st.lists(st.integers(-3, 3), min_size=6, max_size=6),
)


@given(chain_and_coeffs)
def test_chain_closed_form_matches_exact_solve(data):
    chain, v = data
    gens = [indicator(6, f) for f in chain if len(f) != 6]
    assert chain_cone_contains(chain, v) == simplicial_contains(gens, v)


@given(st.sampled_from(maximal_chains(flats(corpus.m_a3()))), st.lists(st.integers(0, 4), min_size=2, max_size=2), st.integers(-5, 5))
def test_nonnegative_combinations_are_inside(chain, coeffs, shift):
    gens = [indicator(6, f) for f in chain if len(f) != 6]
    v = [shift + sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(6)]
    assert chain_cone_contains(chain, v)


# spans and interior points


def test_span_examples(m_a3):
    assert cone_span(6, C05) == cone_span(6, C50)
    a = (S({0}), S({0, 1, 3}), E6)
    b = (S({0}), S({0, 2, 4}), E6)
    assert cone_span(6, a) != cone_span(6, b)
    only = span_of(6, [])
    assert only.dim == 1 and only.rows == ((1,) * 6,)


def test_interior_point_examples(m_a3):
    p = interior_point(6, C05)
    assert p == (0, -2, -2, -2, -2, -1)
    assert all(isinstance(x, Fraction) for x in p)
    assert interior_point(6, (S({3}), E6)) == normalize(indicator(6, {3}))
    fan = bergman_fan(m_a3)
    for cone in fan.cones:
        assert interior_point(6, cone) == interior_point(6, cone.member_chains[0])
        assert cone.contains(interior_point(6, cone))


def test_primitive_ray():
    assert primitive_ray((0, 2, 2, 0)) == (0, 1, 1, 0)
    assert primitive_ray((1, 0, 0)) == (0, -1, -1)
    assert primitive_ray((Fraction(1, 2), 0, 1)) == (0, -1, 1)
    with pytest.raises(MatroidError):
        primitive_ray((4, 4, 4))


# fans


def test_fine_subdivision_counts(m_a3, f7):
    assert len(fine_subdivision(m_a3).cones) == 18
    assert len(fine_subdivision(uniform_matroid(2, 3)).cones) == 3
    assert len(fine_subdivision(f7).cones) == 21


def test_fine_subdivision_is_max_nested_fan(m_a3):
    lat = flats(m_a3)
    assert fine_subdivision(m_a3) == nested_fan(m_a3, max_building_set(lat), lat)


def test_min_nested_fan_braid(m_a3):
    fan = min_nested_fan(m_a3)
    assert len(fan.cones) == 15 and len(fan.rays) == 10
    assert fan.lineality_dim == 1


def test_min_nested_fan_n5(n5):
    lat = flats(n5)
    gmin = min_building_set(lat)
    fan = min_nested_fan(n5)
    proper = [f for f in gmin.members if len(f) != 5]
    assert len(fan.rays) == len(proper) == 7
    assert {tuple(r) for r in fan.rays} == {primitive_ray(indicator(5, f)) for f in proper}
    # atom < {0,1,2} or {0,3,4} < E gives 6; atom pairs {1,3},{1,4},{2,3},{2,4} close to pair flats outside G: 4
    assert len(fan.cones) == 10
    assert len(bergman_fan(n5).cones) != 10


@pytest.mark.parametrize("name", sorted(corpus.NAMED))
def test_nested_fans_pure_and_rays_by_construction(full_corpus, name):
    m = full_corpus[name]
    lat = flats(m)
    for g in (min_building_set(lat), max_building_set(lat)):
        fan = nested_fan(m, g, lat)
        assert all(len(c.rays) == m.rank() - 1 for c in fan.cones)
        proper = [f for f in g.members if len(f) != m.size]
        assert set(fan.rays) == {primitive_ray(indicator(m.size, f)) for f in proper}
        assert all(trop_contains(m, r) for r in fan.rays)


def test_nested_fan_rejects_non_building(m_a3):
    from tropfan.lattice import BuildingSet

    lat = flats(m_a3)
    atoms = BuildingSet(lat, tuple(f for f in lat.flats if len(f) == 1))
    with pytest.raises(MatroidError, match="building"):
        nested_fan(m_a3, atoms, lat)


# polytope and degenerations


def test_polytope_examples(m_a3, d22):
    u12 = uniform_matroid(1, 2)
    assert matroid_polytope_vertices(u12) == [(1, 0), (0, 1)]
    assert polytope_dim(u12) == 1
    assert polytope_dim(m_a3) == 5
    assert polytope_dim(d22) == 2


@pytest.mark.parametrize("name", sorted(corpus.NAMED))
def test_polytope_dim_formula(full_corpus, name):
    m = full_corpus[name]
    assert polytope_dim(m) == m.size - m.num_components()


def test_degeneration_examples(m_a3):
    assert degeneration_matroid(m_a3, (0,) * 6) == m_a3
    up = degeneration_matroid(m_a3, e(0))
    assert set(up.bases) == {b for b in m_a3.bases if 0 in b} and up.is_loopfree()
    down = degeneration_matroid(m_a3, e(0, s=-1))
    assert set(down.bases) == {b for b in m_a3.bases if 0 not in b}
    assert down.loops() == S({0})


@pytest.mark.parametrize("name", ["braid3", "N5", "F7", "U35"])
def test_degeneration_loopfree_iff_trop(full_corpus, name):
    from tropfan.verify import lcg_vectors

    m = full_corpus[name]
    for v in itertools.islice(lcg_vectors(m.size, 2, 300, seed=7), 300):
        assert degeneration_matroid(m, v).is_loopfree() == trop_contains(m, v)


# Bergman fan


def test_bergman_braid(m_a3):
    fan = bergman_fan(m_a3)
    assert len(fan.cones) == 15 and len(fan.rays) == 10
    assert fan.lineality_dim == 1
    sizes = sorted(len(c.member_chains) for c in fan.cones)
    assert sizes == [1] * 12 + [2] * 3
    merged = {S().union(*(set(ch[1]) for ch in c.member_chains)) for c in fan.cones if len(c.member_chains) == 2}
    assert merged == {S({0, 5}), S({1, 4}), S({2, 3})}
    # rays are v_F for F in G_min, i.e. not the pair flats
    assert primitive_ray(indicator(6, {0, 5})) not in fan.rays


def test_bergman_small(f7):
    u = uniform_matroid(2, 3)
    assert len(bergman_fan(u).cones) == 3
    fan = bergman_fan(f7)
    assert len(fan.cones) == 21 and all(len(c.member_chains) == 1 for c in fan.cones)


def test_bergman_threads_do_not_change_output(full_corpus):
    m = full_corpus["braid4"]
    assert bergman_fan(m) == bergman_fan(m, threads=4)


def test_bergman_refuses_disconnected(d22):
    with pytest.raises(HypothesisError) as exc:
        bergman_fan(d22)
    assert exc.value.hypothesis == "connected"


def test_bergman_refuses_loops():
    with pytest.raises(HypothesisError):
        bergman_fan(from_bases(3, [[0, 1]]))


def test_bergman_refuses_non_essential():
    from tropfan.matroid import ExactMatrix, from_matrix

    m = from_matrix(ExactMatrix(((1, 0, 1), (0, 1, 1), (1, 1, 2))))
    with pytest.raises(HypothesisError) as exc:
        bergman_fan(m)
    assert exc.value.hypothesis == "essential"


def brute_groups(m):
    """Group chains by the face maximized at their interior point (no transversals involved)."""
    groups = {}
    for c in maximal_chains(flats(m)):
        groups.setdefault(maximizing_bases(m, interior_point(m.size, c)), []).append(c)
    return groups


@pytest.mark.parametrize("name", sorted(corpus.NAMED))
def test_bergman_grouping_matches_face_grouping(full_corpus, name):
    m = full_corpus[name]
    fan = bergman_fan(m)
    got = {S(c.member_chains) for c in fan.cones}
    assert got == {S(v) for v in brute_groups(m).values()}


@pytest.mark.parametrize("name", sorted(corpus.NAMED))
def test_span_equality_iff_partition_equality(full_corpus, name):
    m = full_corpus[name]
    n = m.size
    fan = bergman_fan(m)
    owner = {c: i for i, cone in enumerate(fan.cones) for c in cone.member_chains}
    chains = maximal_chains(flats(m))
    parts = {c: S(chain_partition(m, c)) for c in chains}
    spans = {c: cone_span(n, c) for c in chains}
    for a, b in itertools.combinations(chains, 2):
        same_span = spans[a] == spans[b]
        assert same_span == (parts[a] == parts[b])
        if same_span:
            assert owner[a] == owner[b]
    for c in chains:
        fam = transversal_bases(m, chain_partition(m, c))
        assert degeneration_matroid(m, interior_point(n, c)).bases == fam


def test_bergman_membership_routes_agree(m_a3):
    fan = bergman_fan(m_a3)
    from tropfan.verify import lcg_vectors

    for v in lcg_vectors(6, 2, 400, seed=3):
        for cone in fan.cones:
            assert cone.contains(v) == cone.contains_by_face(m_a3, v)


def test_structured_samples_in_trop(full_corpus):
    # uniform box samples rarely hit trop(M) for larger matroids; build points in chain cones
    m = full_corpus["braid4"]
    chains = maximal_chains(flats(m))
    fan = bergman_fan(m)
    fine = fine_subdivision(m)
    for k, c in enumerate(chains[::7]):
        gens = [indicator(m.size, f) for f in c if len(f) != m.size]
        v = [sum((j + k) % 3 * g[i] for j, g in enumerate(gens)) for i in range(m.size)]
        assert trop_contains(m, v)
        assert fine.contains(v) and fan.contains(v)
        assert any(b.contains_by_face(m, v) for b in fan.cones)


def test_fan_lineality(full_corpus):
    for name, m in full_corpus.items():
        assert bergman_fan(m).lineality_dim == 1, name


def test_bergman_rays_in_trop(full_corpus):
    for m in full_corpus.values():
        fan = bergman_fan(m)
        assert all(trop_contains(m, r) for r in fan.rays)
        assert all(isinstance(c, BergmanCone) for c in fan.cones)
