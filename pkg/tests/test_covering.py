import random

import pytest

from spinhecke.covering import (
    FreeElement,
    bar_report,
    coproduct,
    divided_binomial_check,
    divided_norm_check,
    divided_word,
    form,
    form_property_check,
    gram_report,
    in_radical,
    is_bar_invariant,
    lu12_check,
    radical_rank,
    rtheta_check,
    serre_element,
    serre_report,
    serre_sign_exponent,
    theta_norm,
)
from spinhecke.ring import PI_ONE, pi_q, quantum_integer
from spinhecke.rootdata import Weight, builtin_datum, valid_fixtures


def test_theta_norm(osp12, b01):
    assert theta_norm(osp12, "i") == 1 / (1 - pi_q(1, 2))
    assert theta_norm(b01, "even") == 1 / (1 - pi_q(0, 4))
    assert form(osp12, FreeElement.word("i"), FreeElement.word("i")) == theta_norm(osp12, "i")


def test_unit_pairs_to_one(osp12):
    assert form(osp12, FreeElement.word(()), FreeElement.word(())) == PI_ONE


def test_pairing_of_ii(osp12):
    expected = pi_q(1, -1) * quantum_integer(2, 1, 1) / (1 - pi_q(1, 2)) ** 2
    assert form(osp12, FreeElement.word("ii"), FreeElement.word("ii")) == expected


def test_different_weights_pair_to_zero(b01):
    value = form(b01, FreeElement.word(("odd",)), FreeElement.word(("even",)))
    assert value.is_zero()


@pytest.mark.parametrize("name, node", [("osp12", "i"), ("sl2", "i"), ("b01", "odd"), ("b01", "even")])
@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_divided_power_norms_match_both_closed_forms(name, node, a):
    report = divided_norm_check(builtin_datum(name), node, a)
    assert report["product_form"]
    assert report["factorial_form"]


@pytest.mark.parametrize("a", [1, 2, 3])
def test_coproduct_of_divided_powers(osp12, b01, a):
    assert rtheta_check(osp12, "i", a)
    assert rtheta_check(b01, "even", a)
    assert divided_binomial_check(osp12, "i", a)
    assert divided_binomial_check(b01, "even", a)


def test_coproduct_of_a_generator(osp12):
    r = coproduct(osp12, FreeElement.word("i"))
    assert set(r.terms) == {(("i",), ()), ((), ("i",))}


@pytest.mark.parametrize("i, j", [("odd", "even"), ("even", "odd")])
def test_serre_elements_lie_in_the_radical(b01, i, j):
    assert in_radical(b01, serre_element(b01, i, j))


def test_a_plain_word_is_not_in_the_radical(b01):
    assert not in_radical(b01, FreeElement.word(("odd", "even")))


def test_serre_element_needs_distinct_nodes(b01):
    with pytest.raises(ValueError):
        serre_element(b01, "odd", "odd")


def test_serre_sign_exponent():
    assert serre_sign_exponent(0, 1, 1) == 0
    assert serre_sign_exponent(1, 1, 0) == 0
    assert serre_sign_exponent(2, 1, 0) == 1
    assert serre_sign_exponent(2, 1, 1) == 3
    assert serre_sign_exponent(3, 1, 1) == 6
    assert serre_sign_exponent(3, 0, 1) == 0


@pytest.mark.parametrize("name", valid_fixtures())
def test_serre_report_on_every_fixture(name):
    assert serre_report(builtin_datum(name))["passed"]


@pytest.mark.parametrize("name", valid_fixtures())
def test_divided_powers_are_bar_invariant(name):
    assert bar_report(builtin_datum(name), max_power=3)["passed"]


def test_c6_violation_is_not_bar_invariant():
    datum = builtin_datum("c6_violation")
    assert not bar_report(datum, max_power=2)["nodes"]["j"]["quantum_integers"]
    assert not is_bar_invariant(divided_word(datum, ("j",), (2,)))


def test_closed_sum_against_the_recursive_form(b01):
    for total in range(4):
        for a in range(total + 1):
            for b in range(total + 1):
                report = lu12_check(b01, "odd", "even", a, total - a, b, total - b)
                assert report["agrees"] or report["ratio_is_minus_one"], report


def test_closed_sum_needs_an_odd_node(b01):
    with pytest.raises(ValueError):
        lu12_check(b01, "even", "odd", 1, 0, 1, 0)


def test_form_properties_on_random_triples():
    rng = random.Random(11)
    names = valid_fixtures()
    for _ in range(60):
        datum = builtin_datum(rng.choice(names))
        total = rng.randint(1, 3)
        word = tuple(rng.choice(datum.nodes) for _ in range(total))
        cut = rng.randint(0, total)
        shuffled = list(word)
        rng.shuffle(shuffled)
        checks = form_property_check(datum, word[:cut], word[cut:], tuple(shuffled))
        assert all(checks.values()), (datum.name, word, cut, checks)


def test_gram_report(osp12):
    report = gram_report(osp12, Weight.parse("i:2", osp12))
    assert report["words"] == ["ii"]
    assert report["rank_plus"] == report["rank_minus"] == 1
    assert len(report["gram"]) == 1


def test_radical_ranks_of_a_rank_two_weight(b01):
    # the Serre relation at weight 2 even + odd cuts three words down to two
    weight = Weight.parse("even:2,odd:1", b01)
    assert radical_rank(b01, weight, 1) == 2
    assert radical_rank(b01, weight, -1) == 2
