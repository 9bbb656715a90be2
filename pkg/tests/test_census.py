import pytest

from selfnorm import constructors as C
from selfnorm.census import (
    BUCKETS,
    FROB2_CASES,
    FROB3_CASES,
    FormulaError,
    census,
    classify_small,
    formula_frob1,
    formula_frob2,
    formula_frob3,
    nilpotent_bounds,
    pgroup_bounds,
    product_lower_bound,
    relative_census,
    solvable_dl_bound,
)
from selfnorm.lattice import conjugacy_classes_of_subgroups
from selfnorm.structure import center, normal_subgroups


@pytest.mark.parametrize("name,d", [("C4", 1), ("S4", 7), ("C13", 0), ("C1", 0), ("D3", 1), ("A4", 2)])
def test_census_values(groups, name, d):
    assert census(groups(name)).d_value == d


def test_census_a6():
    rep = census(C.preset("A6"))
    assert rep.group_order == 360
    assert rep.d_value == 11
    assert rep.total_subgroups == 501


def test_census_report_fields(a5):
    rep = census(a5)
    assert rep.total_subgroup_classes == 9
    assert rep.total_subgroups == 59
    assert [r.order for r in rep.class_records] == [2, 3, 4, 5]
    assert all(not r.self_normalizing for r in rep.class_records)


def test_whole_group_never_counted(groups):
    # N_G(G) = G, so G is excluded without any properness filter
    for name in ["C7", "S3", "Q8"]:
        G = groups(name)
        assert all(r.order < G.order for r in census(G).class_records)


def test_relative_census(s4, groups):
    assert relative_census(s4, s4.trivial) == 0
    G = C.dicyclic(3)
    assert relative_census(G, center(G)) == 0
    A4 = next(H for H in normal_subgroups(s4) if H.order == 12)
    # classes of the double-transposition C2, C3 and the normal V4
    assert relative_census(s4, A4) == 3
    Z = center(groups("C12"))
    assert relative_census(groups("C12"), Z) == census(groups("C12")).d_value


def test_relative_census_central_equals_census_of_subgroup(groups):
    G = groups("C2xQ8")
    Z = center(G)
    assert relative_census(G, Z) == census(Z.as_group()).d_value


def test_formula_examples():
    assert formula_frob1(2, 1) == 2
    assert formula_frob1(1, 2) == 3
    assert formula_frob2(7, 3, "split-distinct") == 5
    assert formula_frob2(7, 3, "homogeneous") == 9
    assert formula_frob2(7, 3, "homogeneous-scalar") == 9
    assert formula_frob2(7, 3, "split-repeated") == 9
    assert formula_frob2(5, 3, "irreducible") == 3
    assert formula_frob3(7, 3, "three-components") == 43
    assert formula_frob3(2, 7, "irreducible") == 3
    assert formula_frob3(7, 3, "homogeneous") == 115
    assert formula_frob3(7, 3, "mixed-dims") == 51


def test_formula_errors():
    with pytest.raises(FormulaError):
        formula_frob1(0, 1)
    with pytest.raises(FormulaError):
        formula_frob2(7, 3, "irreducible")  # q | p - 1
    with pytest.raises(FormulaError):
        formula_frob2(5, 3, "split-distinct")  # 3 does not divide 4
    with pytest.raises(FormulaError):
        formula_frob2(3, 5, "irreducible")  # (3+1)/5 is not an integer
    with pytest.raises(FormulaError):
        formula_frob3(5, 5, "homogeneous")
    with pytest.raises(FormulaError):
        formula_frob3(7, 3, "bogus")


def test_case_lists():
    assert FROB2_CASES == ("irreducible", "homogeneous", "split-distinct")
    assert len(FROB3_CASES) == 4


def test_product_lower_bound():
    assert product_lower_bound(0, 0) == 2
    assert product_lower_bound(1, 0) == 4
    assert product_lower_bound(0, 1) == 4
    with pytest.raises(ValueError):
        product_lower_bound(-1, 0)


def test_bounds():
    assert pgroup_bounds(4) == (2, 2)
    assert pgroup_bounds(6) == (3, 2)
    assert nilpotent_bounds(10, 2)[0] == 2
    assert nilpotent_bounds(10, 2) == (2, 2)
    assert nilpotent_bounds(14, 1) == (7, 3)
    with pytest.raises(ValueError):
        nilpotent_bounds(3, 2)
    assert solvable_dl_bound(4) == 3
    assert solvable_dl_bound(100) == min(99, 9 + 19)
    with pytest.raises(ValueError):
        solvable_dl_bound(2)


@pytest.mark.parametrize(
    "name,bucket",
    [
        ("C1", "D0-trivial"),
        ("C13", "D0-prime"),
        ("C9", "D1-cyclic-p2"),
        ("D7", "D1-frobenius-pq"),
        ("C8", "D2-(1)"),
        ("C15", "D2-(2)"),
        ("A4", "D2-(4)"),
        ("C16", "D3-(1)"),
        ("V4", "D3-(2)"),
        ("Dic3", "D3-(8)"),
        ("Dic5", "D3-(8)"),
        ("A5", "D4-A5"),
        ("SL2(3)", "D4-SL23"),
        ("S4", "not-covered"),
        ("Q8", "not-covered"),
        ("C12", "not-covered"),
    ],
)
def test_classify_small(groups, name, bucket):
    G = groups(name)
    v = classify_small(G)
    assert v.bucket == bucket
    assert v.predicted_d == BUCKETS[bucket]
    if v.predicted_d is not None:
        assert census(G).d_value == v.predicted_d
    else:
        assert census(G).d_value >= 4


@pytest.mark.parametrize(
    "G,bucket",
    [
        (lambda: C.frobenius_metacyclic(5, 2, 2, 1), "D2-(3)"),
        (lambda: C.frobenius_metacyclic(3, 3, 2, 1), "D3-(3)"),
        (lambda: C.frobenius_elem_abelian(5, 2, 3, "irreducible"), "D3-(4)"),
        (lambda: C.frobenius_metacyclic(5, 1, 2, 2), "D3-(5)"),
        (lambda: C.frobenius_elem_abelian(2, 3, 7, "irreducible"), "D3-(7)"),
        (lambda: C.central_extension_example(7, 3), "D3-(8)"),
    ],
)
def test_classify_frobenius_buckets(G, bucket):
    G = G()
    v = classify_small(G)
    assert v.bucket == bucket
    assert census(G).d_value == v.predicted_d


def test_classify_squarefree_kernel():
    # C15 x| C2 with the inversion action is dihedral of order 30
    G = C.dihedral(15)
    v = classify_small(G)
    assert v.bucket == "D3-(6)"
    assert census(G).d_value == 3


def test_non_self_normalizing_classes_are_exact(s4):
    recs = conjugacy_classes_of_subgroups(s4)
    counted = [r for r in recs if r.order > 1 and r.normalizer_order > r.order]
    assert census(s4).d_value == len(counted)
