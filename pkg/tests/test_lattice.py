import pytest

import oracles as O
from selfnorm import constructors as C
from selfnorm.lattice import (
    LatticeTooLarge,
    all_subgroups,
    centralizer,
    class_of,
    conjugacy_classes_of_subgroups,
    cyclic_subgroups,
    is_self_normalizing,
    normalizer,
    subgroup_less,
)
from selfnorm.perm import parse_permutation
from selfnorm.structure import center, sylow_subgroup


def test_cyclic_subgroups(groups):
    assert [H.order for H in cyclic_subgroups(groups("C6"))] == [1, 2, 3, 6]
    assert len(cyclic_subgroups(groups("V4"))) == 4
    assert sorted(H.order for H in cyclic_subgroups(groups("S3"))) == [1, 2, 2, 2, 3]


@pytest.mark.parametrize("name,count", [("S3", 6), ("Q8", 6), ("A5", 59)])
def test_all_subgroup_counts(groups, name, count):
    # frozen from the join-closure oracle
    assert len(all_subgroups(groups(name))) == count


def test_q8_subgroup_orders(groups):
    assert sorted(H.order for H in all_subgroups(groups("Q8"))) == [1, 2, 4, 4, 4, 8]


def test_a5_classes(a5):
    recs = conjugacy_classes_of_subgroups(a5)
    assert [r.order for r in recs] == [1, 2, 3, 4, 5, 6, 10, 12, 60]
    assert sum(r.class_size for r in recs) == 59


def test_s4_classes(s4):
    assert len(conjugacy_classes_of_subgroups(s4)) == 11


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (2, 4)])
def test_cyclic_p_group_classes(p, k):
    recs = conjugacy_classes_of_subgroups(C.cyclic(p**k))
    assert len(recs) == k + 1
    assert all(r.is_normal for r in recs)


def test_normalizer_examples(groups, a5):
    S3 = groups("S3")
    t = S3.subgroup_generated([parse_permutation("(1 2)", 3)])
    assert normalizer(S3, t) == t
    c3 = S3.subgroup_generated([parse_permutation("(1 2 3)", 3)])
    assert normalizer(S3, c3) == S3.whole
    assert normalizer(a5, sylow_subgroup(a5, 5)).order == 10


def test_centralizer_examples(groups):
    Q8 = groups("Q8")
    S3 = groups("S3")
    assert centralizer(Q8, Q8.trivial) == Q8.whole
    assert centralizer(Q8, center(Q8)) == Q8.whole
    c3 = S3.subgroup_generated([parse_permutation("(1 2 3)", 3)])
    assert centralizer(S3, c3) == c3


def test_self_normalizing_rules(groups, s4):
    D4 = groups("D4")
    assert is_self_normalizing(D4, D4.whole)
    assert not any(is_self_normalizing(D4, H) for H in all_subgroups(D4) if not H.is_whole())
    for p in (2, 3):
        N = normalizer(s4, sylow_subgroup(s4, p))
        assert is_self_normalizing(s4, N)


def test_conjugate_classes_share_order_and_normalizer_order(s4):
    for rec in conjugacy_classes_of_subgroups(s4):
        orders = {H.order for H in rec.members()}
        norms = {normalizer(s4, H).order for H in rec.members()}
        assert orders == {rec.order}
        assert norms == {rec.normalizer_order}
        assert rec.class_size * rec.normalizer_order == s4.order


def test_class_records_match_oracle_classes(s4):
    elems = frozenset(g.images for g in s4.elements)
    ref = O.subgroup_classes(elems, O.all_subgroups(elems))
    ref_sets = sorted(sorted(len(H) for H in cls) for cls in ref)
    mine = sorted(sorted(H.order for H in rec.members()) for rec in conjugacy_classes_of_subgroups(s4))
    assert mine == ref_sets


def test_canonical_order_and_representatives(s4):
    recs = conjugacy_classes_of_subgroups(s4)
    reps = [r.representative for r in recs]
    for a, b in zip(reps, reps[1:]):
        assert subgroup_less(a, b)
    for r in recs:
        assert all(not subgroup_less(H, r.representative) for H in r.members())


def test_class_of(s4):
    H = s4.subgroup_generated([parse_permutation("(2 4)", 4)])
    rec = class_of(s4, H)
    assert rec.order == 2 and rec.class_size == 6


def test_subgroup_cap():
    with pytest.raises(LatticeTooLarge):
        conjugacy_classes_of_subgroups(C.sym(4), max_subgroups=10)


def test_deterministic_across_builds():
    a = [r.representative.bits for r in conjugacy_classes_of_subgroups(C.preset("S4"))]
    b = [r.representative.bits for r in conjugacy_classes_of_subgroups(C.preset("S4"))]
    assert a == b
