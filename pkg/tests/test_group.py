import numpy as np
import pytest

import oracles as O
from selfnorm.group import GroupTooLarge, NotNormal, element_order, enumerate_group, quotient
from selfnorm.lattice import conjugacy_classes_of_subgroups
from selfnorm.perm import Permutation, parse_permutation


def P(text, degree):
    return parse_permutation(text, degree)


def test_enumerate_s3():
    G = enumerate_group(3, [P("(1 2)", 3), P("(1 2 3)", 3)])
    assert G.order == 6


def test_enumerate_a5_matches_bfs_oracle():
    gens = [P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)]
    G = enumerate_group(5, gens)
    ref = O.bfs_closure([g.images for g in gens], 5)
    assert G.order == 60 == len(ref)
    assert {g.images for g in G.elements} == set(ref)


def test_enumerate_no_generators_is_trivial():
    G = enumerate_group(4, [])
    assert G.order == 1
    assert G.element(0).is_identity()


def test_element_table_is_sorted_and_identity_first():
    G = enumerate_group(4, [P("(1 2 3 4)", 4), P("(1 2)", 4)])
    imgs = [g.images for g in G.elements]
    assert imgs == sorted(imgs)
    assert G.element(0).is_identity()


def test_enumerate_is_idempotent():
    G = enumerate_group(4, [P("(1 2 3 4)", 4), P("(1 2)", 4)])
    H = enumerate_group(4, G.elements)
    assert H == G


def test_order_cap():
    with pytest.raises(GroupTooLarge):
        enumerate_group(6, [P("(1 2 3 4 5 6)", 6), P("(1 2)", 6)], max_order=100)


def test_element_orders():
    G = enumerate_group(5, [P("(1 2 3 4 5)", 5), P("(1 2)", 5)])
    assert element_order(G, Permutation.identity(5)) == 1
    assert element_order(G, P("(1 2 3 4 5)", 5)) == 5
    assert element_order(G, P("(1 2)(3 4 5)", 5)) == 6


def test_multiplication_table_matches_permutations():
    G = enumerate_group(4, [P("(1 2 3 4)", 4), P("(1 2)", 4)])
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, G.order, size=(50, 2)):
        assert G.element(int(G.mul(a, b))) == G.element(int(a)) * G.element(int(b))
        assert G.element(int(G.inv[a])) == ~G.element(int(a))


def _s4_and_v4(s4):
    V = next(r.representative for r in conjugacy_classes_of_subgroups(s4) if r.order == 4 and r.is_normal)
    return V


def test_quotient_s4_by_v4_is_s3(s4):
    V = _s4_and_v4(s4)
    qp = quotient(s4, V)
    Q = qp.quotient
    ref = O.coset_quotient_order_and_exponent(frozenset(g.images for g in s4.elements), frozenset(g.images for g in V.elements()))
    assert (Q.order, False, 6) == ref
    assert Q.order == 6
    assert int(np.lcm.reduce(Q.element_orders)) == 6
    # projection is a homomorphism on generators and everything else
    for a in s4.generator_indices:
        for b in range(s4.order):
            assert qp.project(int(s4.mul(a, b))) == int(Q.mul(qp.project(a), qp.project(b)))
    assert Q.order * V.order == s4.order


def test_quotient_by_trivial_and_whole(s4):
    assert quotient(s4, s4.trivial).quotient.order == 24
    assert quotient(s4, s4.whole).quotient.order == 1


def test_quotient_rejects_non_normal(s4):
    H = s4.subgroup_generated([P("(1 2)", 4)])
    with pytest.raises(NotNormal):
        quotient(s4, H)


def test_subgroup_operations(s4):
    H = s4.subgroup_generated([P("(1 2)", 4)])
    K = s4.subgroup_generated([P("(3 4)", 4)])
    J = H.join(K)
    assert J.order == 4
    assert H <= J and not J <= H
    assert (H & K).order == 1
    assert P("(1 2)", 4) in H
    g = s4.index(P("(2 3)", 4))
    assert H.conjugate(g) == s4.subgroup_generated([P("(1 3)", 4)])
    assert J.as_group().order == 4
