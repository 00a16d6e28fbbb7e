import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropfan import corpus
from tropfan.endo import (
    IntegerLinearMap,
    check_fan_compatibility,
    descends_to_quotient,
    from_chart,
    is_matroid_automorphism,
    maps_into_trop,
    permutation_map,
    quotient_scale,
)
from tropfan.errors import MatroidError
from tropfan.fans import bergman_fan, failing_circuit, indicator, trop_contains
from tropfan.matroid import uniform_matroid

I6 = permutation_map(range(6))


def test_descends_examples():
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert descends_to_quotient(ident) and quotient_scale(ident) == 1
    perm = permutation_map([2, 0, 3, 1]).matrix
    assert quotient_scale(perm) == 1
    bad = [row[:] for row in ident]
    bad[0][0] = 2
    assert not descends_to_quotient(bad)
    with pytest.raises(MatroidError):
        IntegerLinearMap(tuple(map(tuple, bad)))
    with pytest.raises(MatroidError):
        quotient_scale([[1, 0]])


def test_permutation_map_examples():
    assert permutation_map([0, 1, 2]).matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert permutation_map([1, 0, 2]).matrix == ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    a = permutation_map([1, 0, 2])
    assert a((5, 7, 9)) == (7, 5, 9)
    with pytest.raises(MatroidError):
        permutation_map([0, 0, 1])


@given(st.permutations(range(5)), st.permutations(range(5)))
def test_permutation_functoriality(p, q):
    pq = [p[q[i]] for i in range(5)]
    assert permutation_map(pq) == permutation_map(p) @ permutation_map(q)


def test_flags():
    a = permutation_map([1, 0, 2, 3])
    assert a.invertible and a.unimodular and a.scale_on_ones == 1
    doubled = IntegerLinearMap(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    assert doubled.invertible and not doubled.unimodular and doubled.quotient_det() == 4
    collapse = IntegerLinearMap(((1, 0), (1, 0)))
    assert not collapse.invertible


def test_quotient_matrix_of_identity():
    assert I6.quotient_matrix() == [[int(i == j) for j in range(5)] for i in range(5)]


def test_from_chart():
    a = from_chart([[2, 1], [0, 1]])
    assert a.matrix == ((0, 0, 0), (-3, 2, 1), (-1, 0, 1))
    assert a.scale_on_ones == 0
    # on the chart w_0 = 0 the lifted map is the chart matrix
    assert a((0, 1, 0)) == (0, 2, 0) and a((0, 0, 1)) == (0, 1, 1)
    assert a.quotient_matrix() == [[2, 1], [0, 1]]


def test_automorphism_examples(m_a3, f7):
    cyc = corpus.fano_singer_cycle()
    assert cyc == [1, 3, 5, 2, 0, 6, 4]
    assert is_matroid_automorphism(f7, cyc)
    assert not is_matroid_automorphism(m_a3, [1, 0, 2, 3, 4, 5])
    assert is_matroid_automorphism(m_a3, range(6))


def test_singer_cycle_has_order_seven():
    cyc = corpus.fano_singer_cycle()
    assert corpus.permutation_power(cyc, 7) == list(range(7))
    assert all(corpus.permutation_power(cyc, k) != list(range(7)) for k in range(1, 7))


def test_collineation_agrees_with_singer():
    # companion matrix of x^3 + x + 1 acting on coordinates (c2, c1, c0)
    comp = [[0, 1, 0], [0, 0, 1], [1, 0, 1]]
    perm = corpus.collineation(2, 2, comp)
    f7 = corpus.f7()
    assert is_matroid_automorphism(f7, perm)
    with pytest.raises(MatroidError):
        corpus.collineation(2, 2, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])


def test_identity_compatible(m_a3):
    r = check_fan_compatibility(m_a3, I6)
    assert r.passed and r.targets == list(range(15))
    assert maps_into_trop(m_a3, I6).passed


def test_fano_automorphisms_compatible(f7):
    fan = bergman_fan(f7)
    cyc = corpus.fano_singer_cycle()
    for k in (1, 2, 3):
        perm = corpus.permutation_power(cyc, k)
        r = check_fan_compatibility(f7, permutation_map(perm), fan)
        assert r.passed and sorted(r.targets) == list(range(21))
        assert r.unimodular


def test_transposition_fails_on_braid(m_a3):
    swap = permutation_map([1, 0, 2, 3, 4, 5])
    r = check_fan_compatibility(m_a3, swap)
    assert not r.passed
    w = r.witnesses[0]
    assert w["kind"] == "image_outside_trop"
    assert failing_circuit(m_a3, w["image"]) is not None
    assert w["image"] == list(swap(indicator(6, w["generator"])))
    into = maps_into_trop(m_a3, swap)
    assert not into.passed
    for w in into.witnesses:
        if "generator" in w:
            assert not trop_contains(m_a3, w["image"])


def test_size_mismatch(m_a3):
    with pytest.raises(MatroidError):
        check_fan_compatibility(m_a3, permutation_map(range(5)))


@pytest.mark.parametrize("name", ["braid3", "N5", "U24", "pg13"])
def test_automorphisms_imply_compatibility(full_corpus, name):
    m = full_corpus[name]
    fan = bergman_fan(m)
    seen = 0
    for p in corpus.all_permutations(m.size):
        if is_matroid_automorphism(m, p):
            seen += 1
            a = permutation_map(p)
            assert check_fan_compatibility(m, a, fan).passed
            assert maps_into_trop(m, a, fan).passed
    assert seen >= 2


def test_non_automorphisms_of_braid_fail(m_a3):
    fan = bergman_fan(m_a3)
    for p in itertools.islice((p for p in corpus.all_permutations(6) if not is_matroid_automorphism(m_a3, p)), 40):
        assert not check_fan_compatibility(m_a3, permutation_map(p), fan).passed


def test_compatibility_soundness_by_sampling(m_a3, f7):
    rng = random.Random(5)
    a3_auto = [p for p in corpus.all_permutations(6) if is_matroid_automorphism(m_a3, p)][-1]
    for m, perm in ((m_a3, a3_auto), (f7, corpus.fano_singer_cycle())):
        assert is_matroid_automorphism(m, perm)
        fan = bergman_fan(m)
        a = permutation_map(perm)
        r = check_fan_compatibility(m, a, fan)
        assert r.passed
        for idx, cone in enumerate(fan.cones):
            target = fan.cones[r.targets[idx]]
            for chain in cone.member_chains:
                gens = [indicator(m.size, f) for f in chain if len(f) != m.size]
                for _ in range(5):
                    cs = [rng.randint(0, 4) for _ in gens]
                    v = [sum(c * g[i] for c, g in zip(cs, gens)) for i in range(m.size)]
                    img = a(v)
                    assert trop_contains(m, img) and target.contains(img)


@settings(max_examples=15)
@given(st.data())
def test_composition_of_passing_maps(data):
    m = corpus.m_a3()
    autos = [p for p in corpus.all_permutations(6) if is_matroid_automorphism(m, p)]
    fan = bergman_fan(m)
    p = data.draw(st.sampled_from(autos))
    q = data.draw(st.sampled_from(autos))
    scale = data.draw(st.integers(1, 3))
    a = IntegerLinearMap(tuple(tuple(scale * x for x in r) for r in permutation_map(p).matrix))
    b = permutation_map(q)
    assert check_fan_compatibility(m, a, fan).passed and check_fan_compatibility(m, b, fan).passed
    assert check_fan_compatibility(m, a @ b, fan).passed


def test_scalar_multiple_of_identity_is_compatible_not_unimodular(m_a3):
    a = IntegerLinearMap(tuple(tuple(2 * int(i == j) for j in range(6)) for i in range(6)))
    r = check_fan_compatibility(m_a3, a)
    assert r.passed and r.invertible and not r.unimodular


def test_uniform_full_symmetry():
    m = uniform_matroid(2, 4)
    assert all(is_matroid_automorphism(m, p) for p in corpus.all_permutations(4))


def test_report_json(m_a3):
    doc = check_fan_compatibility(m_a3, I6).to_json()
    assert doc["verdict"] == "pass" and doc["stats"]["unimodular"] is True
