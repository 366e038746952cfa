import random
from fractions import Fraction

import pytest

from spinhecke.config import Conventions
from spinhecke.grothendieck import lowest_degree
from spinhecke.polyrep import (
    HeckeElement,
    PolynomialRepresentation,
    PolyVector,
    RelationFailure,
    apply_psi,
    braid_rhs,
    center_check,
    e,
    format_monomial,
    format_word,
    grading_check,
    idempotent_check,
    pbw_coordinates,
    pbw_independence,
    phi_check,
    psi_check,
    psi_involution_check,
    reduced_word_dependence,
    relation_instances,
    tau,
    verify_relations,
    y,
)
from spinhecke.rootdata import Weight, builtin_datum


def rep_of(name, weight):
    datum = builtin_datum(name)
    return PolynomialRepresentation(datum, Weight.parse(weight, datum))


def test_words_and_formatting():
    x = HeckeElement.word(y(1)) * HeckeElement.word(tau(1), e(("i", "i")))
    assert x == HeckeElement.word(y(1), tau(1), e(("i", "i")))
    assert format_word((y(1), tau(1), e(("i", "i")))) == "y1 tau1 e(i,i)"
    assert format_monomial((("i", "j"), (2, 0))) == "y1^2 e(i,j)"
    assert (x - x).is_zero()
    assert apply_psi(x) == HeckeElement.word(e(("i", "i")), tau(1), y(1))


def test_odd_y_anticommute():
    rep = rep_of("osp12", "i:2")
    ii = ("i", "i")
    image = rep.apply_to_monomial(HeckeElement.word(y(2), e(ii)), (ii, (1, 0)))
    assert image == {(ii, (1, 1)): Fraction(-1)}
    image = rep.apply_to_monomial(HeckeElement.word(y(1), e(ii)), (ii, (0, 1)))
    assert image == {(ii, (1, 1)): Fraction(1)}


def test_idempotent_kills_other_components():
    rep = rep_of("b01", "even:1,odd:1")
    vector = PolyVector.monomial(("even", "odd"), (0, 0))
    assert rep.apply(HeckeElement.word(e(("odd", "even"))), vector).is_zero()
    assert rep.apply(HeckeElement.word(e(("even", "odd"))), vector) == vector


def test_relation_instances_cover_every_family():
    datum = builtin_datum("b01")
    names = {inst.name for inst in relation_instances(datum, Weight.parse("even:1,odd:2", datum))}
    assert {"y-commute", "tau-y-next", "y-next-tau", "quadratic", "tau-idempotent"} <= names


@pytest.mark.parametrize(
    "name, weight",
    [
        ("osp12", "i:2"),
        ("osp12", "i:3"),
        ("b01", "even:1,odd:1"),
        ("b01", "odd:2,even:1"),
        ("b01", "even:2,odd:1"),
        ("odd_double", "p:1,r:2"),
    ],
)
def test_relations_hold(name, weight):
    report = verify_relations(rep_of(name, weight), 6)
    assert report["checked"] > 0
    assert report["failures"] == []


def test_relations_hold_on_module_generators():
    report = verify_relations(rep_of("b01", "odd:2,even:1"), 4, exact=True)
    assert report["failures"] == []


def test_strict_mode_raises_on_a_broken_convention():
    datum = builtin_datum("osp12")
    broken = Conventions(tau_equal_odd=-1)
    rep = PolynomialRepresentation(datum, Weight.parse("i:3", datum), broken)
    # tau_1 y_2 e(ii) - y_1 tau_1 e(ii) = e(ii) only holds for one sign of tau
    with pytest.raises(RelationFailure):
        verify_relations(rep, 4, strict=True)


def test_grading_and_idempotents():
    rep = rep_of("b01", "even:1,odd:1")
    assert grading_check(rep, 4)["failures"] == []
    assert idempotent_check(rep, 4)


@pytest.mark.parametrize("name, weight", [("osp12", "i:3"), ("b01", "even:1,odd:1"), ("b01", "odd:2,even:1")])
def test_pbw_elements_are_independent(name, weight):
    rep = rep_of(name, weight)
    low = min(lowest_degree(rep.datum, ui) for ui in rep.components)
    report = pbw_independence(rep, low, 4)
    assert report["checked"] > 0
    assert report["failures"] == []


def test_alternative_reduced_words_differ_by_lower_terms():
    rep = rep_of("osp12", "i:3")
    assert reduced_word_dependence(rep, ("i", "i", "i"), (2, 1, 2))["passed"]
    rep = rep_of("b01", "odd:2,even:1")
    report = reduced_word_dependence(rep, ("odd", "even", "odd"), (2, 1, 2))
    assert report["passed"]
    with pytest.raises(ValueError):
        reduced_word_dependence(rep, ("odd", "even", "odd"), (1, 1))


def test_automorphisms_preserve_relations():
    rep = rep_of("b01", "even:1,odd:1")
    phi = phi_check(rep, 4)
    assert phi["failures"] == []
    assert phi["involution"]
    assert psi_check(rep, 4)["failures"] == []
    assert psi_involution_check(rep, random.Random(3), samples=8, cap=4)


def test_symmetric_polynomials_are_central():
    assert center_check(rep_of("osp12", "i:2"), 4)["failures"] == []
    assert center_check(rep_of("b01", "even:1,odd:1"), 4)["failures"] == []


def test_basis_elements_have_unit_coordinates():
    rep = rep_of("b01", "even:1,odd:1")
    for b in rep.basis_elements(-2, 2):
        assert pbw_coordinates(rep, HeckeElement.word(*b.word())) == {b: Fraction(1)}


@pytest.mark.parametrize("weight", ["odd:2,even:1", "even:2,odd:1"])
def test_braid_relation_needs_the_shipped_sign(weight):
    datum = builtin_datum("b01")
    flipped = PolynomialRepresentation(datum, Weight.parse(weight, datum), Conventions(braid_sign=1))
    failures = verify_relations(flipped, 4)["failures"]
    assert failures
    assert all(f["relation"].startswith("braid") for f in failures)
    assert verify_relations(rep_of("b01", weight), 4)["failures"] == []


@pytest.mark.parametrize(
    "name, ui",
    [("b01", ("odd", "even", "odd")), ("b01", ("even", "odd", "even")), ("odd_double", ("r", "p", "r"))],
)
def test_braid_rhs_scales_with_the_sign(name, ui):
    datum = builtin_datum(name)
    rhs = braid_rhs(datum, ui, 1)
    assert not rhs.is_zero()
    assert braid_rhs(datum, ui, 1, overall=-1) == -rhs


def test_component_offsets():
    rep = rep_of("b01", "even:1,odd:1")
    assert rep.offset(("even", "odd")) == (0, 0)
    assert rep.offset(("odd", "even")) == (-2, 0)
    assert rep.bidegree((("odd", "even"), (0, 0))) == (-2, 0)
    rep = rep_of("odd_double", "p:1,r:1")
    assert rep.offset(("p", "r")) == (0, 0)
    assert rep.offset(("r", "p")) == (rep.datum.pair("r", "p"), 1)


@pytest.mark.parametrize(
    "name, weight",
    [("b01", "even:1,odd:1"), ("b01", "odd:2,even:1"), ("odd_double", "p:1,r:1"), ("osp12", "i:3")],
)
def test_generators_are_homogeneous(name, weight):
    report = grading_check(rep_of(name, weight), 4)
    assert report["failures"] == []
