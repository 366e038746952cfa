"""
The free covering half-algebra: words in the theta_i, the twisted coproduct, the
bilinear form, Gram matrices and radical ranks, divided powers, the bar
involution and the quantum Serre elements.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .linalg import rank_over_function_field
from .ring import (
    PI_ONE,
    PI_ZERO,
    LaurentPoly,
    PiScalar,
    RationalFunc,
    pi_q,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
)
from .rootdata import RootDatum, Weight, enumerate_sequences

logger = logging.getLogger(__name__)

Word = tuple


def word_weight(datum: RootDatum, word: Iterable[str]) -> Weight:
    return Weight.of_sequence(datum, word)


def word_parity(datum: RootDatum, word: Iterable[str]) -> int:
    return sum(datum.p(i) for i in word) % 2


def word_pairing(datum: RootDatum, left: Iterable[str], right: Iterable[str]) -> int:
    right = list(right)
    return sum(datum.pair(i, j) for i in left for j in right)


class FreeElement:
    """Linear combination of words with PiScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, PiScalar] | None = None):
        self.terms = {tuple(w): c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def word(cls, word: Iterable[str], coeff: PiScalar = PI_ONE) -> FreeElement:
        return cls({tuple(word): coeff})

    @classmethod
    def zero(cls) -> FreeElement:
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: FreeElement) -> FreeElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeElement(out)

    def __neg__(self) -> FreeElement:
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: FreeElement) -> FreeElement:
        return self + (-other)

    def scale(self, coeff: PiScalar) -> FreeElement:
        return FreeElement({w: c * coeff for w, c in self.terms.items()})

    def __mul__(self, other: FreeElement) -> FreeElement:
        out: dict[Word, PiScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return FreeElement(out)

    def weights(self, datum: RootDatum) -> set[Weight]:
        return {word_weight(datum, w) for w in self.terms}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self) -> list:
        return [{"word": list(w), "coeff": c.to_json()} for w, c in self.items()]

    def __repr__(self) -> str:
        return " + ".join(f"({c})*{''.join(w) or '1'}" for w, c in self.items()) or "0"


class TensorElement:
    """Element of f' (x) f' with the twisted product."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: Mapping[tuple[Word, Word], PiScalar] | None = None):
        self.datum = datum
        self.terms = {(tuple(a), tuple(b)): c for (a, b), c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def pure(cls, datum: RootDatum, left: Iterable[str], right: Iterable[str], coeff=PI_ONE) -> TensorElement:
        return cls(datum, {(tuple(left), tuple(right)): coeff})

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.datum, out)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + TensorElement(self.datum, {k: -c for k, c in other.terms.items()})

    def scale(self, coeff: PiScalar) -> TensorElement:
        return TensorElement(self.datum, {k: c * coeff for k, c in self.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        """(x1 (x) x2)(x1' (x) x2') = pi^(p(x2)p(x1')) q^-(|x2|,|x1'|) x1x1' (x) x2x2'."""
        out: dict[tuple[Word, Word], PiScalar] = {}
        for (a1, a2), c1 in self.terms.items():
            for (b1, b2), c2 in other.terms.items():
                twist = pi_q(
                    word_parity(self.datum, a2) * word_parity(self.datum, b1),
                    -word_pairing(self.datum, a2, b1),
                )
                key = (a1 + b1, a2 + b2)
                value = c1 * c2 * twist
                out[key] = out[key] + value if key in out else value
        return TensorElement(self.datum, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None


def coproduct(datum: RootDatum, x: FreeElement) -> TensorElement:
    """r(x), the algebra map with r(theta_i) = theta_i (x) 1 + 1 (x) theta_i."""
    total = TensorElement(datum)
    for word, coeff in x.terms.items():
        acc = TensorElement.pure(datum, (), ())
        for letter in word:
            gen = TensorElement.pure(datum, (letter,), ()) + TensorElement.pure(datum, (), (letter,))
            acc = acc * gen
        total = total + acc.scale(coeff)
    return total


def theta_norm(datum: RootDatum, i: str) -> PiScalar:
    """(theta_i, theta_i) = 1 / (1 - pi_i q_i^2)."""
    s, p = datum.s(i), datum.p(i)
    plus = RationalFunc.from_laurent(1, LaurentPoly({0: 1, 2 * s: -1}))
    minus = RationalFunc.from_laurent(1, LaurentPoly({0: 1, 2 * s: -((-1) ** p)}))
    return PiScalar(plus, minus)


class FormEvaluator:
    """
    Memoized evaluation of the bilinear form on words.

    (w, v) = N(w, v) * prod_letters (theta_l, theta_l), where the Laurent part N is
    computed by peeling the first letter j of v:
    N(w, j v'') = sum over k with w_k = j of pi^(p(j)p(w_<k)) q^-(|w_<k|, alpha_j) N(w - k, v'').
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self._numerators: dict[tuple[Word, Word], dict[tuple[int, int], int]] = {}
        self._norms: dict[tuple[str, ...], PiScalar] = {}

    def numerator(self, w: Word, v: Word) -> dict[tuple[int, int], int]:
        """N(w, v) as {(q-exponent, pi-exponent): coefficient}."""
        key = (w, v)
        cached = self._numerators.get(key)
        if cached is not None:
            return cached
        if len(w) != len(v):
            result = {}
        elif not v:
            result = {(0, 0): 1}
        else:
            j, rest = v[0], v[1:]
            pj = self.datum.p(j)
            result = {}
            q_exp, pi_exp = 0, 0
            for k, letter in enumerate(w):
                if letter == j:
                    sub = self.numerator(w[:k] + w[k + 1 :], rest)
                    for (qe, pe), c in sub.items():
                        key2 = (qe + q_exp, (pe + pi_exp) % 2)
                        result[key2] = result.get(key2, 0) + c
                q_exp -= self.datum.pair(letter, j)
                pi_exp += pj * self.datum.p(letter)
            result = {k2: c for k2, c in result.items() if c}
        self._numerators[key] = result
        return result

    def numerator_scalar(self, w: Word, v: Word) -> PiScalar:
        plus: dict[int, int] = {}
        minus: dict[int, int] = {}
        for (qe, pe), c in self.numerator(tuple(w), tuple(v)).items():
            plus[qe] = plus.get(qe, 0) + c
            minus[qe] = minus.get(qe, 0) + (-c if pe else c)
        return PiScalar.of(LaurentPoly(plus), LaurentPoly(minus))

    def norm(self, word: Word) -> PiScalar:
        key = tuple(sorted(word))
        if key not in self._norms:
            value = PI_ONE
            for letter in key:
                value = value * theta_norm(self.datum, letter)
            self._norms[key] = value
        return self._norms[key]

    def pairing(self, w: Iterable[str], v: Iterable[str]) -> PiScalar:
        w, v = tuple(w), tuple(v)
        num = self.numerator_scalar(w, v)
        if num.is_zero():
            return PI_ZERO
        return num * self.norm(w)

    def form(self, x: FreeElement, y: FreeElement) -> PiScalar:
        total = PI_ZERO
        for w, cw in x.terms.items():
            for v, cv in y.terms.items():
                if sorted(w) != sorted(v):
                    continue
                value = self.pairing(w, v)
                if not value.is_zero():
                    total = total + cw * cv * value
        return total

    def cache_size(self) -> int:
        return len(self._numerators)


@lru_cache(maxsize=None)
def form_evaluator(datum: RootDatum) -> FormEvaluator:
    return FormEvaluator(datum)


def form(datum: RootDatum, x: FreeElement, y: FreeElement) -> PiScalar:
    return form_evaluator(datum).form(x, y)


def tensor_form(datum: RootDatum, x: TensorElement, y: TensorElement) -> PiScalar:
    """(x' (x) x'', y' (x) y'') = (x', y')(x'', y'')."""
    ev = form_evaluator(datum)
    total = PI_ZERO
    for (a1, a2), c1 in x.terms.items():
        for (b1, b2), c2 in y.terms.items():
            if sorted(a1) != sorted(b1) or sorted(a2) != sorted(b2):
                continue
            total = total + c1 * c2 * ev.pairing(a1, b1) * ev.pairing(a2, b2)
    return total


def gram(datum: RootDatum, weight: Weight) -> tuple[list[tuple[str, ...]], list[list[PiScalar]]]:
    words = enumerate_sequences(datum, weight)
    ev = form_evaluator(datum)
    matrix = [[ev.pairing(w, v) for v in words] for w in words]
    logger.info(f"Gram matrix of {datum.name} at {weight}: {len(words)} words, memo {ev.cache_size()}")
    return words, matrix


def radical_rank(datum: RootDatum, weight: Weight, sign: int) -> int:
    """Rank of the Gram matrix at pi = sign, i.e. the dimension of f_nu there."""
    words = enumerate_sequences(datum, weight)
    ev = form_evaluator(datum)
    # the common factor prod (theta_l, theta_l) is invertible, so the numerators carry the rank
    rows = [[ev.numerator_scalar(w, v).component(sign) for v in words] for w in words]
    return rank_over_function_field(rows)


def gram_report(datum: RootDatum, weight: Weight, include_matrix: bool = True) -> dict:
    words, matrix = gram(datum, weight)
    report = {
        "datum": datum.name,
        "weight": weight.to_json(),
        "words": ["".join(w) if all(len(x) == 1 for x in w) else ",".join(w) for w in words],
        "rank_plus": radical_rank(datum, weight, 1),
        "rank_minus": radical_rank(datum, weight, -1),
    }
    if include_matrix:
        report["gram"] = [[entry.to_json() for entry in row] for row in matrix]
    return report


def divided_word(datum: RootDatum, ui: Iterable[str], uk: Iterable[int]) -> FreeElement:
    """theta_{i_1}^(k_1) ... theta_{i_t}^(k_t) in the word basis."""
    word: list[str] = []
    coeff = PI_ONE
    for i, k in zip(ui, uk):
        if k == 0:
            continue
        word.extend([i] * k)
        coeff = coeff / quantum_factorial(k, datum.s(i), datum.p(i))
    return FreeElement.word(word, coeff)


def serre_sign_exponent(k: int, pi_: int, pj: int) -> int:
    """p(k; i, j) = k p(i) p(j) + k(k-1)/2 p(i)."""
    return k * pi_ * pj + comb(k, 2) * pi_


def serre_element(datum: RootDatum, i: str, j: str) -> FreeElement:
    """sum over a + a' = 1 - a_ij of (-1)^a' pi^p(a'; i, j) theta_i^(a) theta_j theta_i^(a')."""
    if i == j:
        raise ValueError("The Serre element needs two distinct nodes")
    n = 1 - datum.a(i, j)
    total = FreeElement.zero()
    for a_prime in range(n + 1):
        a = n - a_prime
        sign = pi_q(serre_sign_exponent(a_prime, datum.p(i), datum.p(j)), 0) * ((-1) ** a_prime)
        total = total + divided_word(datum, (i, j, i), (a, 1, a_prime)).scale(sign)
    return total


def in_radical(datum: RootDatum, x: FreeElement) -> bool:
    """True iff x pairs to zero with every word of its weight, at both pi = +1 and pi = -1."""
    if x.is_zero():
        return True
    weights = x.weights(datum)
    if len(weights) != 1:
        raise ValueError("in_radical needs a weight-homogeneous element")
    (weight,) = weights
    ev = form_evaluator(datum)
    for w in enumerate_sequences(datum, weight):
        if not ev.form(x, FreeElement.word(w)).is_zero():
            return False
    return True


def bar_element(x: FreeElement) -> FreeElement:
    """The bar involution: coefficients barred, theta_i fixed."""
    return FreeElement({w: c.bar() for w, c in x.terms.items()})


def is_bar_invariant(x: FreeElement) -> bool:
    return bar_element(x) == x


def divided_norm_closed_forms(datum: RootDatum, i: str, a: int) -> tuple[PiScalar, PiScalar]:
    """Both closed forms of (theta_i^(a), theta_i^(a))."""
    s, p = datum.s(i), datum.p(i)
    sign = (-1) ** p
    plus = LaurentPoly.constant(1)
    minus = LaurentPoly.constant(1)
    for t in range(1, a + 1):
        plus = plus * LaurentPoly({0: 1, 2 * s * t: -1})
        minus = minus * LaurentPoly({0: 1, 2 * s * t: -(sign**t)})
    product_form = pi_q(p * comb(a, 2), 0) * PiScalar.of(
        RationalFunc.from_laurent(1, plus), RationalFunc.from_laurent(1, minus)
    )
    base = pi_q(p, s) - pi_q(0, -s)
    factorial_form = (
        pi_q(p * comb(a, 2), -s * a * (a + 1) // 2) * ((-1) ** a) / (base**a * quantum_factorial(a, s, p))
    )
    return product_form, factorial_form


def divided_norm_check(datum: RootDatum, i: str, a: int) -> dict:
    x = divided_word(datum, (i,), (a,))
    recursive = form(datum, x, x)
    product_form, factorial_form = divided_norm_closed_forms(datum, i, a)
    return {
        "node": i,
        "a": a,
        "product_form": recursive == product_form,
        "factorial_form": recursive == factorial_form,
        "value": recursive.to_json(),
    }


def rtheta_check(datum: RootDatum, i: str, a: int) -> bool:
    """r(theta_i^(a)) = sum over t + t' = a of (pi_i q_i)^(-t t') theta_i^(t) (x) theta_i^(t')."""
    s, p = datum.s(i), datum.p(i)
    lhs = coproduct(datum, divided_word(datum, (i,), (a,)))
    rhs = TensorElement(datum)
    for t in range(a + 1):
        t2 = a - t
        coeff = pi_q(p * t * t2, -s * t * t2)
        coeff = coeff / (quantum_factorial(t, s, p) * quantum_factorial(t2, s, p))
        rhs = rhs + TensorElement.pure(datum, (i,) * t, (i,) * t2, coeff)
    return lhs == rhs


def divided_binomial_check(datum: RootDatum, i: str, a: int) -> bool:
    """(x + y)^a with x = 1 (x) theta_i, y = theta_i (x) 1 expands with (pi_i q_i)^(-t(a-t)) [a choose t]_i."""
    s, p = datum.s(i), datum.p(i)
    x = TensorElement.pure(datum, (), (i,))
    y = TensorElement.pure(datum, (i,), ())
    power = TensorElement.pure(datum, (), ())
    for _ in range(a):
        power = power * (x + y)
    expected = TensorElement(datum)
    for t in range(a + 1):
        coeff = pi_q(p * t * (a - t), -s * t * (a - t)) * quantum_binomial(a, t, s, p)
        expected = expected + TensorElement.pure(datum, (i,) * t, (i,) * (a - t), coeff)
    return power == expected


def lu12_closed_form(datum: RootDatum, i: str, j: str, a: int, a2: int, b: int, b2: int) -> PiScalar:
    """The closed sum for (theta_i^(a) theta_j theta_i^(a2), theta_i^(b) theta_j theta_i^(b2)), i odd."""
    if not datum.p(i):
        raise ValueError(f"Node {i} must be odd")
    if a + a2 != b + b2:
        raise ValueError(f"Weights differ: {a}+{a2} != {b}+{b2}")
    n = a + a2
    si, pj, aij = datum.s(i), datum.p(j), datum.a(i, j)
    denominator_base = (pi_q(1, si) - pi_q(0, -si)) ** n * theta_norm(datum, j).inverse()
    total = PI_ZERO
    for t in range(0, min(a, b) + 1):
        s, t2 = b - t, a - t
        s2 = a2 - s
        if min(s, t2, s2) < 0 or t2 + s2 != b2:
            continue
        spade = (s * (s - 1) + s2 * (s2 - 1) + t * (t - 1) + t2 * (t2 - 1)) // 2
        club = s * s2 + t * t2 + t * s + t2 * s2 + 2 * t2 * s + (spade + n) + (t2 + s) * aij
        heart = s * s2 + t * t2 + t * s + t2 * s2 + t2 * s + (s + t2) * pj + spade
        factorials = PI_ONE
        for k in (s, s2, t, t2):
            factorials = factorials * quantum_factorial(k, si, 1)
        term = pi_q(heart, -si * club) * ((-1) ** (n + 1)) / (denominator_base * factorials)
        total = total + term
    return total


def lu12_check(datum: RootDatum, i: str, j: str, a: int, a2: int, b: int, b2: int) -> dict:
    """Compare the closed sum with the recursive form; the ratio is reported, never adjusted."""
    closed = lu12_closed_form(datum, i, j, a, a2, b, b2)
    recursive = form(
        datum, divided_word(datum, (i, j, i), (a, 1, a2)), divided_word(datum, (i, j, i), (b, 1, b2))
    )
    ratio = None
    if recursive.is_invertible() and closed.is_invertible():
        ratio = closed / recursive
    return {
        "a": [a, a2],
        "b": [b, b2],
        "agrees": closed == recursive,
        "ratio": ratio.to_json() if ratio is not None else None,
        "ratio_is_minus_one": ratio is not None and ratio == PiScalar.from_int(-1),
    }


def form_property_check(datum: RootDatum, x1: Word, x2: Word, y: Word) -> dict[str, bool]:
    """
    Properties of the form on words:
        b: (y, x1 x2) = (r(y), x1 (x) x2)
        c: (x1 x2, y) = (x1 (x) x2, r(y))
        d: symmetry of (x1 x2, y)
    """
    ev = form_evaluator(datum)
    left = FreeElement.word(tuple(x1) + tuple(x2))
    right = FreeElement.word(y)
    split = TensorElement.pure(datum, x1, x2)
    r_y = coproduct(datum, right)
    return {
        "b": ev.form(right, left) == tensor_form(datum, r_y, split),
        "c": ev.form(left, right) == tensor_form(datum, split, r_y),
        "d": ev.form(left, right) == ev.form(right, left),
    }


def quantum_integer_bar_invariant(datum: RootDatum, i: str, k: int) -> bool:
    value = quantum_integer(k, datum.s(i), datum.p(i))
    return value.bar() == value


def bar_report(datum: RootDatum, max_power: int = 4) -> dict:
    """Bar invariance of the quantum integers and divided powers at each node, and of the Serre elements."""
    nodes = {}
    for i in datum.nodes:
        nodes[i] = {
            "quantum_integers": all(quantum_integer_bar_invariant(datum, i, k) for k in range(1, max_power + 1)),
            "divided_powers": all(
                is_bar_invariant(divided_word(datum, (i,), (k,))) for k in range(1, max_power + 1)
            ),
        }
    serre = {
        f"{i},{j}": is_bar_invariant(serre_element(datum, i, j)) for i, j in datum.rank_two_pairs()
    }
    passed = all(v["quantum_integers"] and v["divided_powers"] for v in nodes.values()) and all(serre.values())
    return {"datum": datum.name, "nodes": nodes, "serre": serre, "passed": passed}


def serre_report(datum: RootDatum, pairs: Iterable[tuple[str, str]] | None = None) -> dict:
    results = []
    for i, j in pairs or datum.rank_two_pairs():
        x = serre_element(datum, i, j)
        results.append(
            {
                "i": i,
                "j": j,
                "a_ij": datum.a(i, j),
                "terms": len(x.terms),
                "in_radical": in_radical(datum, x),
            }
        )
    return {"datum": datum.name, "pairs": results, "passed": all(r["in_radical"] for r in results)}
