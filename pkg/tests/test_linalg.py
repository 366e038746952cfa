from fractions import Fraction

import pytest

from spinhecke.linalg import NotInSpan, independent_subset, rank_over_function_field, solve_in_span, sparse_rank
from spinhecke.ring import LaurentPoly, RationalFunc


def test_sparse_rank():
    assert sparse_rank([{"a": 1}, {"a": 2}]) == 1
    assert sparse_rank([{"a": 1}, {"b": Fraction(1, 3)}]) == 2
    assert sparse_rank([{}, {"a": 0}]) == 0


def test_solve_in_span():
    vectors = [{"a": 1, "b": 1}, {"b": 2}]
    solution = solve_in_span(vectors, {"a": 3, "b": 5})
    assert solution == [Fraction(3), Fraction(1)]


def test_solve_outside_span():
    with pytest.raises(NotInSpan):
        solve_in_span([{"a": 1}], {"b": 1})
    with pytest.raises(NotInSpan):
        solve_in_span([], {"b": 1})


def test_independent_subset_picks_from_the_front():
    assert independent_subset([{"a": 1}, {"a": 2}, {"b": 1}]) == [0, 2]


def test_rank_over_function_field():
    q = RationalFunc.from_laurent(LaurentPoly({1: 1}))
    one = RationalFunc.from_laurent(1)
    # [[1, q], [q, q^2]] is singular, [[1, q], [q, 1]] is not
    assert rank_over_function_field([[one, q], [q, q * q]]) == 1
    assert rank_over_function_field([[one, q], [q, one]]) == 2
