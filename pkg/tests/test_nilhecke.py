from math import comb

import pytest

from spinhecke.nilhecke import (
    annihilator_signs,
    closed_form_sign,
    delta_shift_check,
    demazure_check,
    e_n_annihilators,
    e_n_check,
    e_n_closed_form,
    idempotent_suite,
    lambda_basis_check,
    lambda_dim,
    matrix_dims_check,
    nil_coxeter_check,
    nil_hecke,
    nilhecke_dim,
    odd_elementary,
    partitions,
    shift_word,
    w0_word,
)
from spinhecke.polyrep import HeckeElement


def test_w0_word():
    assert w0_word(1) == ()
    assert w0_word(3) == (1, 2, 1)
    assert len(w0_word(4)) == comb(4, 2)
    assert shift_word(w0_word(3)) == (2, 3, 2)


def test_partitions():
    assert partitions(0, 3) == [()]
    assert partitions(4, 2) == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_odd_elementary_range():
    with pytest.raises(ValueError):
        odd_elementary(4, 3, 1)


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_nilhecke_dimension(n, parity):
    assert nilhecke_dim(n, parity, 20)["agreement"]


@pytest.mark.slow
@pytest.mark.parametrize("parity", [0, 1])
def test_nilhecke_dimension_n4(parity):
    assert nilhecke_dim(4, parity, 20)["agreement"]


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_dimension_needs_the_plain_q_shift(n, parity):
    report = lambda_dim(n, parity, 16)
    assert report["corrected_agrees"]
    assert report["literal_agrees"] == (parity == 0 or comb(n, 2) % 2 == 0)


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("n", [2, 3])
def test_matrix_algebra_dimension(n, parity):
    assert matrix_dims_check(n, parity, 12)["passed"]


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("n", [2, 3])
def test_nil_coxeter_and_demazure_relations(n, parity):
    assert nil_coxeter_check(n, parity, 4)["passed"]
    assert demazure_check(n, parity, 4)["passed"]


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_e_n_is_idempotent(n, parity):
    assert e_n_check(n, parity)["literal"]
    assert e_n_check(n, parity, strict=True)["literal"]


def assert_all_literal(report):
    assert report["passed"]
    for key, value in report.items():
        if isinstance(value, dict):
            assert value["literal"], key
            assert value["proportional"], key


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("n", [2, 3])
def test_idempotent_identities_hold_literally(n, parity):
    assert_all_literal(idempotent_suite(n, parity))


@pytest.mark.slow
@pytest.mark.parametrize("parity", [0, 1])
def test_idempotent_identities_hold_literally_n4(parity):
    assert_all_literal(idempotent_suite(4, parity, 8))


def test_closed_form_and_annihilator_signs():
    assert [closed_form_sign(n, 0) for n in (2, 3, 4)] == [-1, 1, -1]
    assert [closed_form_sign(n, 1) for n in (2, 3, 4)] == [1, 1, 1]
    assert [annihilator_signs(n, 0) for n in (2, 3, 4)] == [(-1, 1), (1, 1), (-1, 1)]
    assert [annihilator_signs(n, 1) for n in (2, 3, 4)] == [(1, 1), (-1, -1), (-1, -1)]


def test_even_e_2_equals_its_signed_closed_form():
    # e_2 = -d_1 y_1 while d_w0 y^delta_2 = d_1 y_1
    result = e_n_closed_form(2, 0)
    assert result["scalar"] == "1"
    assert result["literal"]


def test_zero_is_not_a_multiple_of_a_nonzero_operator():
    nh = nil_hecke(2, 1)
    result = nh.compare(HeckeElement(), nh.e_n(), 4)
    assert not result["proportional"]
    assert not result["literal"]
    assert result["witness"] is not None
    result = nh.compare(HeckeElement(), HeckeElement(), 4)
    assert result["literal"]
    assert result["scalar"] is None


@pytest.mark.parametrize("parity", [0, 1])
def test_shifted_delta_uses_a_reduced_word(parity):
    assert nil_hecke(3, parity).delta_w0(dagger=True) == nil_hecke(3, parity).d_word((2, 1, 2))
    assert nil_hecke(4, parity).delta_w0(dagger=True) == nil_hecke(4, parity).d_word((3, 2, 1, 2, 3, 2))
    for n in (3, 4):
        result = delta_shift_check(n, parity, 6)
        assert result["literal"], result["witness"]


@pytest.mark.parametrize("parity", [0, 1])
def test_annihilators_are_literal(parity):
    for key, value in e_n_annihilators(3, parity, 6).items():
        assert value["literal"], key


@pytest.mark.parametrize("parity", [0, 1])
def test_elementary_products_are_a_basis(parity):
    assert lambda_basis_check(3, parity, 6)["passed"]
