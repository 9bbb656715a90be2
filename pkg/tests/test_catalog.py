import pytest

from selfnorm.catalog import Catalog, CatalogError, GroupSpec, builtin_catalog, format_catalog, parse_catalog
from selfnorm.census import census
from selfnorm.structure import center, is_abelian

SMALL = {
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14", "C15",
    "V4", "C4xC2", "C2xC2xC2", "C6xC2", "D3", "D4", "D5", "D6", "D7", "Q8", "A4", "Dic3", "C3xC3",
}


def test_parse_explicit_spec():
    cat = parse_catalog("group S3 degree 3\ngen (1 2)\ngen (1 2 3)\n")
    assert len(cat) == 1
    spec = cat.get("S3")
    assert spec.recipe is None and spec.degree == 3
    assert spec.build().order == 6


def test_parse_recipe_spec():
    cat = parse_catalog("group F21 recipe frobenius_metacyclic p=7 n=1 q=3 m=1\nexpect d=1\n")
    spec = cat.get("F21")
    assert spec.recipe == "frobenius_metacyclic"
    assert spec.expectation("d") == 1
    assert census(spec.build()).d_value == 1


def test_empty_and_comment_only():
    assert len(parse_catalog("")) == 0
    assert len(parse_catalog("# nothing\n\n   # here\n")) == 0


def test_expect_none_values():
    cat = parse_catalog("group A5 recipe preset name=A5\nexpect d=4 derived-length=none\n")
    assert cat.get("A5").expectation("derived-length") is None


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("group X degree 3\ngen (1 2)\ngroup X degree 2\n", 3, "duplicate"),
        ("group X recipe nosuch n=2\n", 1, "unknown constructor"),
        ("group X recipe cyclic\n", 1, "missing"),
        ("group X recipe cyclic n=two\n", 1, "bad value"),
        ("group X recipe cyclic n=3 k=2\n", 1, "unknown parameter"),
        ("\n\ngen (1 2)\n", 3, "outside"),
        ("group X degree 3\ngen (1 4)\n", 2, "exceeds"),
        ("group X degree 3\nexpect d=x\n", 2, "integer"),
        ("group X degree 3\nexpect colour=3\n", 2, "unknown expectation"),
        ("group X degree 3\nfrobnicate\n", 2, "unknown directive"),
        ("group X sideways 3\n", 1, "expected"),
        ("group X recipe cyclic n=3\ngen (1 2)\n", 2, "not allowed"),
    ],
)
def test_parse_errors_are_line_numbered(text, line, fragment):
    with pytest.raises(CatalogError) as info:
        parse_catalog(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_round_trip_builtin(catalog):
    assert parse_catalog(format_catalog(catalog)) == catalog


def test_round_trip_explicit():
    text = "group S3 degree 3\ngen (1 2)\ngen (1 2 3)\nexpect d=1 nilpotency-class=none\n"
    cat = parse_catalog(text)
    assert format_catalog(cat) == text
    assert parse_catalog(format_catalog(cat)) == cat


def test_builtin_small_groups(catalog):
    # the Frobenius grid and central extensions add second copies of A4 and Dic3
    small = [s for s in catalog if s.build().order <= 15 and not s.name.startswith(("Frob", "CE_"))]
    assert {s.name for s in small} == SMALL
    assert len(small) == 28


def test_builtin_prime_order_groups(catalog):
    primes = [s for s in catalog if s.name in SMALL and s.build().order in (2, 3, 5, 7, 11, 13)]
    assert len(primes) == 6
    assert all(s.expectation("d") == 0 for s in primes)


def test_builtin_order_eight(catalog):
    eight = {s.name for s in catalog if s.build().order == 8}
    assert eight == {"C8", "C4xC2", "C2xC2xC2", "D4", "Q8"}


def test_builtin_small_groups_pairwise_distinct(catalog):
    # (order, abelian, |Z|, subgroup count) separates the 28 groups
    keys = set()
    for s in catalog:
        if s.name not in SMALL:
            continue
        G = s.build()
        keys.add((G.order, is_abelian(G), center(G).order, census(G).total_subgroups))
    assert len(keys) == 28


def test_builtin_contains_presets(catalog):
    for name in ["S4", "A5", "SL2(3)", "A6", "PSL(2,7)", "PSL(2,8)"]:
        assert name in catalog.names()


def test_builtin_expectations_hold(catalog):
    for spec in catalog:
        d = spec.expectation("d")
        if isinstance(d, int):
            assert census(spec.build()).d_value == d, spec.name


def test_builtin_is_stable():
    assert builtin_catalog() == builtin_catalog()
    assert format_catalog(builtin_catalog()) == format_catalog(builtin_catalog())


def test_catalog_get_missing():
    with pytest.raises(KeyError):
        Catalog((GroupSpec("A"),)).get("B")
