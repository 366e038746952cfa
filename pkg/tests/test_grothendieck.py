import pytest

from spinhecke.covering import FreeElement, form, theta_norm
from spinhecke.grothendieck import (
    IdentityFailure,
    ProjClass,
    SerreComplex,
    TruncationTooSmall,
    WeightMismatch,
    categorical_serre,
    class_form_check,
    divided_class_check,
    dual_check,
    gamma_check,
    groupings,
    idempotent_char,
    lowest_degree,
    proj_pairing,
    restrict_decomposition,
    type_m_check,
    type_m_report,
)
from spinhecke.rootdata import Weight, builtin_datum, weights_up_to_height


def test_class_label_and_shift(osp12):
    x = ProjClass.divided([("i", 2), ("j", 1)], q_shift=-1, pi_shift=1)
    assert x.label() == "pi q^-1 P[i^(2)j]"
    assert x.sequence == ("i", "i", "j")
    assert ProjClass.divided([("i", 2)]).intrinsic_shift(osp12) == (-1, 1)
    with pytest.raises(ValueError):
        ProjClass.divided([("i", -1)])


def test_groupings():
    assert groupings(("i", "i", "j")) == [(("i", 1), ("i", 1), ("j", 1)), (("i", 2), ("j", 1))]


def test_simple_projectives_pair_to_theta_norm(osp12, b01):
    assert proj_pairing(osp12, ProjClass.of(["i"]), ProjClass.of(["i"])) == theta_norm(osp12, "i")
    assert proj_pairing(b01, ProjClass.of(["even"]), ProjClass.of(["even"])) == theta_norm(b01, "even")


def test_pairing_of_p_ii_matches_the_covering_form(osp12):
    expected = form(osp12, FreeElement.word("ii"), FreeElement.word("ii"))
    assert proj_pairing(osp12, ProjClass.of("ii"), ProjClass.of("ii")) == expected


def test_pairing_needs_one_weight(b01):
    with pytest.raises(WeightMismatch):
        proj_pairing(b01, ProjClass.of(["odd"]), ProjClass.of(["even"]))


def test_restriction_of_p_ii(osp12):
    one = Weight.parse("i:1", osp12)
    summands = restrict_decomposition(osp12, ("i", "i"), one, one)
    assert summands == [
        {"left": ("i",), "right": ("i",), "q_shift": -2, "pi_shift": 1},
        {"left": ("i",), "right": ("i",), "q_shift": 0, "pi_shift": 0},
    ]
    with pytest.raises(WeightMismatch):
        restrict_decomposition(osp12, ("i", "i"), one, Weight.parse("i:2", osp12))


def test_only_the_degree_reading_of_restriction_is_adjoint(osp12):
    report = class_form_check(osp12, Weight.parse("i:2", osp12))
    assert report["restriction"] == {"deg": True, "neg_deg": False}
    assert report["passed"]


@pytest.mark.parametrize("q_shift, pi_shift", [(0, 0), (3, 1), (-2, 0), (1, 0)])
def test_duality_on_shifts(q_shift, pi_shift):
    assert dual_check(ProjClass.of(["i"], q_shift, pi_shift))


@pytest.mark.parametrize(
    "name, weight",
    [("osp12", "i:2"), ("osp12", "i:3"), ("b01", "even:1,odd:1"), ("b01", "odd:2,even:1"), ("bob", "x1:1,o:1")],
)
def test_covering_form_equals_the_form_on_classes(name, weight):
    datum = builtin_datum(name)
    report = gamma_check(datum, Weight.parse(weight, datum))
    assert report["checked"] > 0
    assert report["mismatches"] == []


def test_gram_ranks_agree_at_both_specializations(b01):
    weights = weights_up_to_height(b01, 3)
    assert all(type_m_check(b01, w) for w in weights)
    assert type_m_report(b01, weights)["passed"]


def test_lowest_degree_and_truncation(osp12):
    assert lowest_degree(osp12, ("i", "i")) == -2
    with pytest.raises(TruncationTooSmall):
        idempotent_char(osp12, ProjClass.of("ii"), -5)


def test_divided_class_character(osp12):
    assert divided_class_check(osp12, "i", 2, 8)["passed"]


def test_serre_complex_needs_distinct_nodes(b01):
    with pytest.raises(ValueError):
        SerreComplex(b01, "odd", "odd")


def test_identity_failure_names_the_clause():
    err = IdentityFailure("chain", "y1 e(i,j)")
    assert isinstance(err, AssertionError)
    assert str(err) == "Clause chain fails on y1 e(i,j)"


def test_categorical_serre_small():
    report = categorical_serre(builtin_datum("b0n3"), "o", "b1", cap=4)
    assert report["clause_passed"]["parity"]
    assert report["clause_passed"]["chain"]
    assert report["passed"]


@pytest.mark.slow
def test_categorical_serre_rank_two(b01):
    report = categorical_serre(b01, "odd", "even", cap=6, char_cap=16, strict=True)
    assert report["passed"]


@pytest.mark.parametrize(
    "name, i, j, expected",
    [
        ("b01", "odd", "even", {(1, "left"): 1, (1, "right"): 1, (2, "left"): 1, (2, "right"): 1}),
        ("odd_double", "p", "r", {(1, "left"): -1, (1, "right"): 1, (2, "left"): 1, (2, "right"): -1}),
    ],
)
def test_interior_signs(name, i, j, expected):
    cx = SerreComplex(builtin_datum(name), i, j)
    assert cx.n == 4
    assert {key: cx.interior_sign(*key) for key in expected} == expected


def test_interior_clause_is_literal_for_an_even_node(b01):
    report = categorical_serre(b01, "even", "odd", cap=4)
    assert report["clause_passed"]["interior"]
    assert report["clauses"]["interior"]["1"]["literal"]


@pytest.mark.slow
def test_interior_clause_with_two_odd_nodes():
    report = categorical_serre(builtin_datum("odd_double"), "p", "r", cap=4)
    assert report["clause_passed"]["interior"]
    assert report["clause_passed"]["boundary"]
