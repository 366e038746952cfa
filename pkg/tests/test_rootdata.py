import random

import pytest

from spinhecke.rootdata import (
    Automorphism,
    IncompatibleAutomorphism,
    Quiver,
    RootDatumError,
    UnknownFixture,
    Weight,
    WeightError,
    builtin_datum,
    datum_from_json,
    derive_root_datum,
    enumerate_sequences,
    list_fixtures,
    random_valid_quiver,
    valid_fixtures,
    weights_up_to_height,
)


def test_osp12(osp12):
    assert osp12.nodes == ("i",)
    assert osp12.p("i") == 1
    assert osp12.s("i") == 1
    assert osp12.a("i", "i") == 2
    assert osp12.check_conditions() == []
    assert osp12.check_q_conditions() == []


def test_b01_cartan(b01):
    assert b01.s("even") == 2
    assert b01.s("odd") == 1
    assert b01.a("even", "odd") == -1
    assert b01.a("odd", "even") == -2
    assert b01.pair("even", "odd") == b01.pair("odd", "even") == -2
    assert b01.check_conditions() == []


@pytest.mark.parametrize("name", ["osp12", "b01", "b0n3", "b0n_affine", "obo", "bob", "odd_double", "odd_quad"])
def test_valid_fixtures_satisfy_every_condition(name):
    datum = builtin_datum(name)
    assert datum.check_conditions() == []
    assert datum.check_q_conditions() == []


def test_fixture_listing():
    names = list_fixtures()
    assert {"osp12", "sl2", "b01", "c6_violation"} <= set(names)
    assert "sl2" not in valid_fixtures()
    assert "c6_violation" not in valid_fixtures()
    assert "osp12" in valid_fixtures()


def test_c6_violation_loads_only_non_strict():
    datum = builtin_datum("c6_violation")
    assert "C6" in datum.check_conditions()
    assert "C4" in datum.check_conditions()
    with pytest.raises(RootDatumError):
        builtin_datum("c6_violation", strict=True)


def test_sl2_has_no_odd_node(sl2):
    assert sl2.check_conditions() == ["C6"]


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        builtin_datum("sl17")


def test_weight_parse(b01):
    weight = Weight.parse("odd:2,even:1", b01)
    assert weight.height == 3
    assert weight.n("odd") == 2
    assert str(weight) == "even:1,odd:2"
    assert Weight.parse("odd", b01) == Weight.of(b01, {"odd": 1})
    with pytest.raises(WeightError):
        Weight.parse("x:1", b01)
    with pytest.raises(WeightError):
        Weight.parse("odd:two", b01)


def test_enumerate_sequences(b01):
    weight = Weight.parse("even:1,odd:1", b01)
    assert enumerate_sequences(b01, weight) == [("even", "odd"), ("odd", "even")]
    assert len(enumerate_sequences(b01, Weight.parse("even:1,odd:2", b01))) == 3


def test_weights_up_to_height(osp12, b01):
    assert [w.height for w in weights_up_to_height(osp12, 3)] == [1, 2, 3]
    assert len(weights_up_to_height(b01, 2)) == 5


def test_parse_word(b01, osp12):
    assert osp12.parse_word("iii") == ("i", "i", "i")
    assert b01.parse_word("odd,even,odd") == ("odd", "even", "odd")
    assert b01.parse_word("odd") == ("odd",)
    with pytest.raises(WeightError):
        b01.parse_word("odd,x")


def test_sub_datum_keeps_the_rank_two_block():
    datum = builtin_datum("b0n3")
    sub = datum.sub_datum("o", "a1")
    assert sub.nodes == ("o", "a1")
    assert sub.a("o", "a1") == datum.a("o", "a1")
    assert sub.a("a1", "o") == datum.a("a1", "o")


def test_q_polynomials_are_swap_symmetric(b01):
    for i in b01.nodes:
        for j in b01.nodes:
            assert b01.q_poly(i, j) == b01.q_poly(j, i).swapped()


def test_random_quivers_satisfy_the_q_matrix_properties():
    rng = random.Random(7)
    for _ in range(50):
        datum = datum_from_json(random_valid_quiver(rng))
        assert datum.check_conditions() == []
        assert datum.check_q_conditions() == []


def b01_quiver():
    return Quiver.build(["even", "odd", "even2"], [("even", "odd"), ("even2", "odd")])


def test_derive_root_datum_folds_the_orbit():
    quiver = b01_quiver()
    swap = Automorphism.build(quiver, {"even": "even2", "even2": "even"})
    datum = derive_root_datum(quiver, swap, {"even": 0, "odd": 1}, order=["even", "odd"], name="folded")
    assert datum.s("even") == 2
    assert datum.a("even", "odd") == -1
    assert datum.a("odd", "even") == -2
    with pytest.raises(RootDatumError):
        derive_root_datum(quiver, swap, {"even": 0}, order=["even", "odd"])


def test_incompatible_automorphism():
    quiver = b01_quiver()
    bad = Automorphism.build(quiver, {"even": "odd", "odd": "even"})
    with pytest.raises(IncompatibleAutomorphism):
        derive_root_datum(quiver, bad, {"even": 0, "odd": 1, "even2": 0})


def test_q_and_p_matrices(b01):
    q = b01.q_matrix()
    p = b01.p_matrix()
    assert q[0][0].coeffs == {}
    assert p[1][1].coeffs == {}
    # P keeps Q on one side of each pair and 1 on the other
    assert {p[0][1] == q[0][1], p[1][0] == q[1][0]} == {True, False}
