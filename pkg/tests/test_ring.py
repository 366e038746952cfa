from fractions import Fraction

import pytest

from spinhecke.ring import (
    PI,
    PI_ONE,
    LaurentPoly,
    PiScalar,
    PiSeries,
    RationalFunc,
    pi_q,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
    series_expand,
)


def q(exp):
    return pi_q(0, exp)


def test_laurent_arithmetic():
    one_plus_q = LaurentPoly({0: 1, 1: 1})
    assert one_plus_q**2 == LaurentPoly({0: 1, 1: 2, 2: 1})
    assert (one_plus_q - one_plus_q).is_zero()
    assert LaurentPoly({-2: 3, 1: 1}).valuation() == -2
    assert LaurentPoly({-2: 3, 1: 1}).degree() == 1
    assert LaurentPoly({-2: 3, 1: 1}).bar() == LaurentPoly({2: 3, -1: 1})


def test_rational_function_cancels():
    num = LaurentPoly({0: 1, 2: -1})
    den = LaurentPoly({0: 1, 1: -1})
    ratio = RationalFunc.from_laurent(num, den)
    assert ratio.is_laurent()
    assert ratio.as_laurent() == LaurentPoly({0: 1, 1: 1})


def test_pi_squares_to_one():
    assert PI * PI == PI_ONE
    assert PI != PI_ONE


def test_zero_divisor_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        (PI_ONE + PI).inverse()


def test_bar_sends_q_to_pi_q_inverse():
    assert q(1).bar() == pi_q(1, -1)
    assert pi_q(1, 2).bar() == pi_q(1, -2)
    x = quantum_integer(3, 1, 1) / (1 - pi_q(1, 2))
    assert x.bar().bar() == x


def test_odd_quantum_integer():
    assert quantum_integer(2, 1, 1) == pi_q(1, 1) + q(-1)
    assert quantum_integer(1, 3, 1) == PI_ONE
    assert quantum_integer(0) == PiScalar.from_int(0)


@pytest.mark.parametrize("s, p", [(1, 1), (2, 0), (3, 1), (4, 0)])
@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_quantum_integers_bar_invariant_when_parity_matches_symmetrizer(s, p, a):
    value = quantum_integer(a, s, p)
    assert value.bar() == value


def test_even_node_with_odd_symmetrizer_breaks_bar_invariance():
    assert quantum_integer(2, 1, 0).bar() != quantum_integer(2, 1, 0)


def test_quantum_binomial():
    expected = q(4) + q(2) + 2 + q(-2) + q(-4)
    assert quantum_binomial(4, 2) == expected
    assert quantum_binomial(4, 2) * quantum_factorial(2) * quantum_factorial(2) == quantum_factorial(4)
    with pytest.raises(ValueError):
        quantum_binomial(2, 3)


def test_series_expand_geometric():
    assert series_expand(1 / (1 - q(2)), 6) == PiSeries.from_counts(6, {(0, 0): 1, (2, 0): 1, (4, 0): 1, (6, 0): 1})
    odd = series_expand(1 / (1 - pi_q(1, 2)), 6)
    assert odd == PiSeries.from_counts(6, {(0, 0): 1, (2, 1): 1, (4, 0): 1, (6, 1): 1})
    assert odd.specialization(-1) == {0: 1, 2: -1, 4: 1, 6: -1}


@pytest.mark.parametrize(
    "value, counts",
    [
        (1 / q(2), {(-2, 0): 1}),
        (1 / (q(1) - q(3)), {(-1, 0): 1, (1, 0): 1, (3, 0): 1}),
        ((1 + q(1)) / (q(-1) - q(1)), {(1, 0): 1, (2, 0): 1, (3, 0): 1}),
    ],
)
def test_series_expand_moves_q_powers_out_of_the_denominator(value, counts):
    assert series_expand(value, 3) == PiSeries.from_counts(3, counts)


def test_series_shift_and_product():
    base = PiSeries.from_counts(4, {(0, 0): 1})
    assert base.shift(2, 1) == PiSeries.from_counts(6, {(2, 1): 1})
    square = series_expand(1 / (1 - q(1)), 5) * series_expand(1 / (1 - q(1)), 5)
    assert square == PiSeries.from_counts(5, {(k, 0): k + 1 for k in range(6)})


def test_series_truncation_compares_common_order():
    long = PiSeries.from_counts(8, {(0, 0): 1, (8, 1): 5})
    short = PiSeries.from_counts(4, {(0, 0): 1})
    assert long == short
    assert long.truncate(4).order == 4


def test_series_from_specializations_halves():
    series = PiSeries.from_specializations(2, {0: 2}, {0: 0})
    assert series.coeff0 == {0: Fraction(1)}
    assert series.coeff1 == {0: Fraction(1)}
