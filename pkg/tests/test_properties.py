"""Property-based checks of the algebraic invariants on random small groups."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles as O
from selfnorm.catalog import GroupSpec, Catalog, format_catalog, parse_catalog
from selfnorm.census import census, relative_census
from selfnorm.group import enumerate_group, quotient
from selfnorm.lattice import conjugacy_classes_of_subgroups, is_self_normalizing, normalizer
from selfnorm.perm import Permutation, parse_permutation
from selfnorm.structure import center, composition_length, derived_length, nilpotency_class

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def perms(degree):
    return st.permutations(range(degree)).map(Permutation)


@st.composite
def perm_triples(draw):
    n = draw(st.integers(1, 7))
    return draw(perms(n)), draw(perms(n)), draw(perms(n))


@st.composite
def small_groups(draw, max_degree=5):
    n = draw(st.integers(2, max_degree))
    gens = draw(st.lists(perms(n), min_size=1, max_size=2))
    return enumerate_group(n, gens)


@SETTINGS
@given(perm_triples())
def test_permutation_group_laws(t):
    a, b, c = t
    e = Permutation.identity(a.degree)
    assert (a * b) * c == a * (b * c)
    assert a * ~a == e == ~a * a
    assert ~(a * b) == ~b * ~a
    assert a * e == a
    assert (a ** a.order()).is_identity()
    assert parse_permutation(str(a), a.degree) == a


@SETTINGS
@given(small_groups())
def test_class_records_are_consistent(G):
    recs = conjugacy_classes_of_subgroups(G)
    for r in recs:
        assert G.order % r.order == 0
        assert r.class_size * r.normalizer_order == G.order
        assert r.normalizer_order % r.order == 0
        assert r.self_normalizing == (normalizer(G, r.representative).order == r.order)
    d = census(G).d_value
    assert d == sum(1 for r in recs if r.order > 1 and not r.self_normalizing)


@SETTINGS
@given(small_groups(max_degree=4))
def test_lattice_matches_oracle(G):
    assume(G.order <= 24)
    elems = O.bfs_closure([g.images for g in G.generators], G.degree)
    recs = conjugacy_classes_of_subgroups(G)
    assert O.lattice_summary(elems) == (sum(r.class_size for r in recs), len(recs), census(G).d_value)


@SETTINGS
@given(small_groups())
def test_quotient_lemma(G):
    d = census(G).d_value
    for r in conjugacy_classes_of_subgroups(G):
        if not r.is_normal or r.order in (1, G.order):
            continue
        Q = quotient(G, r.representative).quotient
        assert Q.order * r.order == G.order
        dq = census(Q).d_value
        m = d - relative_census(G, r.representative)
        assert dq <= m - 1 <= d - 1


@SETTINGS
@given(small_groups())
def test_nilpotent_iff_no_proper_self_normalizing(G):
    proper = [r for r in conjugacy_classes_of_subgroups(G) if r.order < G.order]
    assert (nilpotency_class(G) is not None) == (not any(r.self_normalizing for r in proper))


@SETTINGS
@given(small_groups())
def test_solvable_composition_length(G):
    if derived_length(G) is not None:
        assert composition_length(G) <= census(G).d_value + 1


@SETTINGS
@given(small_groups())
def test_center_is_normal_and_central(G):
    Z = center(G)
    assert normalizer(G, Z).order == G.order
    for z in Z.generators:
        for g in G.generator_indices:
            assert int(G.mul(z, g)) == int(G.mul(g, z))
    assert is_self_normalizing(G, G.whole)


@SETTINGS
@given(small_groups())
def test_enumeration_is_deterministic(G):
    H = enumerate_group(G.degree, list(G.generators))
    assert H == G
    a = [r.representative.bits for r in conjugacy_classes_of_subgroups(G)]
    b = [r.representative.bits for r in conjugacy_classes_of_subgroups(H)]
    assert a == b


names = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,6}", fullmatch=True)
recipes = st.one_of(
    st.builds(lambda n: ("cyclic", (("n", str(n)),)), st.integers(1, 30)),
    st.builds(lambda n: ("dihedral", (("n", str(n)),)), st.integers(1, 30)),
    st.builds(lambda n: ("sym", (("n", str(n)),)), st.integers(1, 6)),
    st.just(("frobenius_metacyclic", (("p", "7"), ("n", "1"), ("q", "3"), ("m", "1")))),
)
expectations = st.lists(
    st.tuples(st.sampled_from(["d", "order", "derived-length", "center-order"]), st.integers(0, 50)),
    max_size=3,
    unique_by=lambda t: t[0],
)


@SETTINGS
@given(st.lists(st.tuples(names, recipes, expectations), max_size=6, unique_by=lambda t: t[0]))
def test_catalog_round_trip(entries):
    specs = tuple(GroupSpec(name=n, recipe=r[0], params=r[1], expected=tuple(e)) for n, r, e in entries)
    cat = Catalog(specs)
    assert parse_catalog(format_catalog(cat)) == cat
