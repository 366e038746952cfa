"""
Exact arithmetic over Z[q, q^-1], its fraction field Q(q) and the pi-extension
Q(q)[pi]/(pi^2 - 1).

A pi-scalar is stored as the pair of its specializations at pi = +1 and pi = -1.
The ring splits as a product under these two maps, so every identity can be
checked as two independent identities over Q(q).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

from sympy import QQ
from sympy.polys.fields import field as frac_field

logger = logging.getLogger(__name__)

# The one rational function field every PiScalar lives in.
FIELD, _Q = frac_field("q", QQ)

Number = Union[int, Fraction]


class InexactDivision(ArithmeticError):
    """A division that must be exact left a remainder."""


def _clean(value: Number) -> Number:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


class LaurentPoly:
    """Finitely supported map from exponents of q to exact rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        cleaned = {}
        for exp, coeff in (terms or {}).items():
            if coeff != 0:
                cleaned[int(exp)] = _clean(coeff)
        self._terms = cleaned
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, coeff: Number) -> LaurentPoly:
        return cls({0: coeff})

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exp: int) -> Number:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("The zero Laurent polynomial has no valuation")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("The zero Laurent polynomial has no degree")
        return max(self._terms)

    def __add__(self, other) -> LaurentPoly:
        other = _as_laurent(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, 0) + coeff
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({exp: -coeff for exp, coeff in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-_as_laurent(other))

    def __rsub__(self, other) -> LaurentPoly:
        return _as_laurent(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({exp: coeff * other for exp, coeff in self._terms.items()})
        other = _as_laurent(other)
        out: dict[int, Number] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("Negative powers of a Laurent polynomial are rational functions")
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({exp + k: coeff for exp, coeff in self._terms.items()})

    def bar(self) -> LaurentPoly:
        """q -> q^-1."""
        return LaurentPoly({-exp: coeff for exp, coeff in self._terms.items()})

    def signed(self) -> LaurentPoly:
        """q -> -q."""
        return LaurentPoly({exp: (-coeff if exp % 2 else coeff) for exp, coeff in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_json(self) -> list:
        return [[exp, str(Fraction(coeff))] for exp, coeff in self.items()]

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in sorted(self._terms.items(), reverse=True):
            if exp == 0:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(f"q^{exp}")
            elif coeff == -1:
                parts.append(f"-q^{exp}")
            else:
                parts.append(f"{coeff}*q^{exp}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    raise TypeError(f"Cannot use {type(value).__name__} as a Laurent polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)


def _poly_from_laurent(poly: LaurentPoly):
    """Split a Laurent polynomial into (sympy polynomial, q-shift)."""
    if poly.is_zero():
        return FIELD.ring.zero, 0
    low = poly.valuation()
    coeffs = {}
    for exp, coeff in poly.items():
        frac = Fraction(coeff)
        coeffs[(exp - low,)] = QQ(frac.numerator, frac.denominator)
    return FIELD.ring.from_dict(coeffs), low


def _laurent_from_poly(poly, shift: int = 0) -> LaurentPoly:
    terms = {}
    for (exp,), coeff in poly.terms():
        terms[exp + shift] = Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))
    return LaurentPoly(terms)


class RationalFunc:
    """Element of Q(q), backed by a sympy fraction-field element."""

    __slots__ = ("_value", "_canonical")

    def __init__(self, value):
        self._value = value
        self._canonical = None

    @classmethod
    def from_laurent(cls, num: LaurentPoly | Number, den: LaurentPoly | Number = 1) -> RationalFunc:
        num, den = _as_laurent(num), _as_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("Rational function with zero denominator")
        num_poly, num_shift = _poly_from_laurent(num)
        den_poly, den_shift = _poly_from_laurent(den)
        shift = num_shift - den_shift
        if shift >= 0:
            num_poly = num_poly * FIELD.ring.gens[0] ** shift
        else:
            den_poly = den_poly * FIELD.ring.gens[0] ** (-shift)
        return cls(FIELD.new(num_poly, den_poly))

    @property
    def value(self):
        return self._value

    def _canonical_pair(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Integer coprime content, den with valuation 0 and positive leading coefficient."""
        if self._canonical is None:
            num = _laurent_from_poly(self._value.numer)
            den = _laurent_from_poly(self._value.denom)
            if num.is_zero():
                self._canonical = (ZERO, ONE)
                return self._canonical
            low = den.valuation()
            num, den = num.shift(-low), den.shift(-low)
            denominators = [Fraction(c).denominator for _, c in num.items() + den.items()]
            scale = 1
            for d in denominators:
                scale = scale * d // gcd(scale, d)
            num, den = num * scale, den * scale
            content = 0
            for _, c in num.items() + den.items():
                content = gcd(content, int(c))
            if den.coeff(den.degree()) < 0:
                content = -content
            self._canonical = (num * Fraction(1, content), den * Fraction(1, content))
        return self._canonical

    @property
    def num(self) -> LaurentPoly:
        return self._canonical_pair()[0]

    @property
    def den(self) -> LaurentPoly:
        return self._canonical_pair()[1]

    def is_zero(self) -> bool:
        return not self._value.numer

    def is_laurent(self) -> bool:
        """True when the denominator is a constant after canonicalization."""
        return self.den.degree() == 0

    def as_laurent(self) -> LaurentPoly:
        num, den = self._canonical_pair()
        if den.degree() != 0:
            raise InexactDivision(f"({num}) / ({den}) is not a Laurent polynomial")
        return num * Fraction(1, Fraction(den.coeff(0)))

    def bar(self) -> RationalFunc:
        return RationalFunc.from_laurent(self.num.bar(), self.den.bar())

    def signed(self) -> RationalFunc:
        return RationalFunc.from_laurent(self.num.signed(), self.den.signed())

    def __add__(self, other) -> RationalFunc:
        return RationalFunc(self._value + _as_frac(other))

    __radd__ = __add__

    def __sub__(self, other) -> RationalFunc:
        return RationalFunc(self._value - _as_frac(other))

    def __rsub__(self, other) -> RationalFunc:
        return RationalFunc(_as_frac(other) - self._value)

    def __neg__(self) -> RationalFunc:
        return RationalFunc(-self._value)

    def __mul__(self, other) -> RationalFunc:
        return RationalFunc(self._value * _as_frac(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunc:
        divisor = _as_frac(other)
        if not divisor.numer:
            raise ZeroDivisionError("Division by the zero rational function")
        return RationalFunc(self._value / divisor)

    def __rtruediv__(self, other) -> RationalFunc:
        return RationalFunc(_as_frac(other)) / self

    def __pow__(self, n: int) -> RationalFunc:
        if n < 0 and self.is_zero():
            raise ZeroDivisionError("Negative power of zero")
        return RationalFunc(self._value**n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFunc.from_laurent(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return not (self._value - other._value).numer

    def __hash__(self) -> int:
        return hash(self._canonical_pair())

    def to_json(self) -> dict:
        num, den = self._canonical_pair()
        return {"num": num.to_json(), "den": den.to_json()}

    def __repr__(self) -> str:
        num, den = self._canonical_pair()
        if den == ONE:
            return repr(num)
        return f"({num})/({den})"


def _as_frac(value):
    if isinstance(value, RationalFunc):
        return value.value
    if isinstance(value, (int, Fraction, LaurentPoly)):
        return RationalFunc.from_laurent(value).value
    raise TypeError(f"Cannot use {type(value).__name__} as a rational function")


def _as_rf(value) -> RationalFunc:
    if isinstance(value, RationalFunc):
        return value
    return RationalFunc.from_laurent(value)


@dataclass(frozen=True, eq=False)
class PiScalar:
    """Element of Q(q)[pi]/(pi^2 - 1) as its two specializations pi = +1 and pi = -1."""

    plus: RationalFunc
    minus: RationalFunc

    @classmethod
    def of(cls, plus, minus=None) -> PiScalar:
        plus = _as_rf(plus)
        return cls(plus, plus if minus is None else _as_rf(minus))

    @classmethod
    def from_int(cls, value: Number) -> PiScalar:
        return cls.of(value)

    @classmethod
    def monomial(cls, q_exp: int = 0, pi_exp: int = 0, coeff: Number = 1) -> PiScalar:
        """coeff * pi^pi_exp * q^q_exp."""
        plus = LaurentPoly.monomial(q_exp, coeff)
        minus = plus if pi_exp % 2 == 0 else -plus
        return cls.of(plus, minus)

    @classmethod
    def from_laurent_pair(cls, plus: LaurentPoly, minus: LaurentPoly) -> PiScalar:
        return cls.of(plus, minus)

    def component(self, sign: int) -> RationalFunc:
        if sign not in (1, -1):
            raise ValueError(f"pi specializes to +1 or -1, not {sign}")
        return self.plus if sign == 1 else self.minus

    specialize = component

    def is_zero(self) -> bool:
        return self.plus.is_zero() and self.minus.is_zero()

    def is_invertible(self) -> bool:
        return not self.plus.is_zero() and not self.minus.is_zero()

    def is_laurent(self) -> bool:
        return self.plus.is_laurent() and self.minus.is_laurent()

    def inverse(self) -> PiScalar:
        if not self.is_invertible():
            raise ZeroDivisionError(f"{self} is a zero divisor")
        return PiScalar(self.plus**-1, self.minus**-1)

    def bar(self) -> PiScalar:
        """q -> pi q^-1: q -> q^-1 at pi = 1 and q -> -q^-1 at pi = -1."""
        return PiScalar(self.plus.bar(), self.minus.bar().signed())

    def __add__(self, other) -> PiScalar:
        other = _as_pi(other)
        return PiScalar(self.plus + other.plus, self.minus + other.minus)

    __radd__ = __add__

    def __neg__(self) -> PiScalar:
        return PiScalar(-self.plus, -self.minus)

    def __sub__(self, other) -> PiScalar:
        return self + (-_as_pi(other))

    def __rsub__(self, other) -> PiScalar:
        return _as_pi(other) - self

    def __mul__(self, other) -> PiScalar:
        other = _as_pi(other)
        return PiScalar(self.plus * other.plus, self.minus * other.minus)

    __rmul__ = __mul__

    def __truediv__(self, other) -> PiScalar:
        return self * _as_pi(other).inverse()

    def __rtruediv__(self, other) -> PiScalar:
        return _as_pi(other) * self.inverse()

    def __pow__(self, n: int) -> PiScalar:
        if n < 0:
            return self.inverse() ** (-n)
        return PiScalar(self.plus**n, self.minus**n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly, RationalFunc)):
            other = PiScalar.of(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self) -> int:
        return hash((self.plus, self.minus))

    def to_json(self) -> dict:
        return {"plus": self.plus.to_json(), "minus": self.minus.to_json()}

    def __repr__(self) -> str:
        return f"PiScalar(plus={self.plus!r}, minus={self.minus!r})"


def _as_pi(value) -> PiScalar:
    if isinstance(value, PiScalar):
        return value
    return PiScalar.of(value)


PI_ZERO = PiScalar.from_int(0)
PI_ONE = PiScalar.from_int(1)
PI = PiScalar.monomial(0, 1)


def pi_q(pi_exp: int, q_exp: int) -> PiScalar:
    """pi^pi_exp q^q_exp."""
    return PiScalar.monomial(q_exp, pi_exp)


@lru_cache(maxsize=None)
def quantum_integer(a: int, s: int = 1, p: int = 0) -> PiScalar:
    """
    The quantum integer [a]_i for a node with symmetrizer s and parity p.

    [a]_i = (pi_i^a q_i^a - q_i^-a) / (pi_i q_i - q_i^-1) with q_i = q^s and pi_i = pi^p,
    expanded as sum_k pi_i^(a-1-k) q_i^(a-1-2k).
    """
    if a < 0:
        raise ValueError(f"Quantum integers are defined here for a >= 0, got {a}")
    plus, minus = {}, {}
    for k in range(a):
        exp = s * (a - 1 - 2 * k)
        plus[exp] = plus.get(exp, 0) + 1
        minus[exp] = minus.get(exp, 0) + (-1) ** ((a - 1 - k) * p)
    return PiScalar.of(LaurentPoly(plus), LaurentPoly(minus))


@lru_cache(maxsize=None)
def quantum_factorial(a: int, s: int = 1, p: int = 0) -> PiScalar:
    result = PI_ONE
    for k in range(1, a + 1):
        result = result * quantum_integer(k, s, p)
    return result


@lru_cache(maxsize=None)
def quantum_binomial(a: int, t: int, s: int = 1, p: int = 0) -> PiScalar:
    """[a choose t]_i as a pair of Laurent polynomials; raises InexactDivision otherwise."""
    if not 0 <= t <= a:
        raise ValueError(f"Binomial index out of range: {t} not in [0, {a}]")
    ratio = quantum_factorial(a, s, p) / (quantum_factorial(t, s, p) * quantum_factorial(a - t, s, p))
    plus, minus = ratio.plus.as_laurent(), ratio.minus.as_laurent()
    return PiScalar.of(plus, minus)


def bar(x: PiScalar) -> PiScalar:
    return x.bar()


@dataclass(frozen=True, eq=False)
class PiSeries:
    """Truncated Laurent series in q with a 1-part and a pi-part."""

    lower: int
    order: int
    coeff0: Mapping[int, Number] = field(default_factory=dict)
    coeff1: Mapping[int, Number] = field(default_factory=dict)

    @classmethod
    def build(cls, order: int, coeff0: Mapping[int, Number], coeff1: Mapping[int, Number]) -> PiSeries:
        c0 = {e: _clean(c) for e, c in coeff0.items() if c != 0 and e <= order}
        c1 = {e: _clean(c) for e, c in coeff1.items() if c != 0 and e <= order}
        exps = list(c0) + list(c1)
        lower = min(exps) if exps else order
        return cls(lower, order, c0, c1)

    @classmethod
    def from_specializations(cls, order: int, plus: Mapping[int, Number], minus: Mapping[int, Number]) -> PiSeries:
        exps = set(plus) | set(minus)
        coeff0 = {e: Fraction(plus.get(e, 0) + minus.get(e, 0), 2) for e in exps}
        coeff1 = {e: Fraction(plus.get(e, 0) - minus.get(e, 0), 2) for e in exps}
        return cls.build(order, coeff0, coeff1)

    @classmethod
    def from_counts(cls, order: int, counts: Mapping[tuple[int, int], int]) -> PiSeries:
        """Series from dimensions keyed by (q-degree, parity)."""
        coeff0, coeff1 = {}, {}
        for (deg, par), n in counts.items():
            target = coeff1 if par % 2 else coeff0
            target[deg] = target.get(deg, 0) + n
        return cls.build(order, coeff0, coeff1)

    def specialization(self, sign: int) -> dict[int, Number]:
        exps = set(self.coeff0) | set(self.coeff1)
        out = {e: self.coeff0.get(e, 0) + sign * self.coeff1.get(e, 0) for e in exps}
        return {e: c for e, c in out.items() if c != 0}

    def shift(self, q_exp: int = 0, pi_exp: int = 0) -> PiSeries:
        """Multiply by pi^pi_exp q^q_exp."""
        c0 = {e + q_exp: c for e, c in self.coeff0.items()}
        c1 = {e + q_exp: c for e, c in self.coeff1.items()}
        if pi_exp % 2:
            c0, c1 = c1, c0
        return PiSeries.build(self.order + q_exp, c0, c1)

    def __add__(self, other: PiSeries) -> PiSeries:
        order = min(self.order, other.order)
        c0 = dict(self.coeff0)
        c1 = dict(self.coeff1)
        for e, c in other.coeff0.items():
            c0[e] = c0.get(e, 0) + c
        for e, c in other.coeff1.items():
            c1[e] = c1.get(e, 0) + c
        return PiSeries.build(order, c0, c1)

    def __neg__(self) -> PiSeries:
        return PiSeries.build(
            self.order, {e: -c for e, c in self.coeff0.items()}, {e: -c for e, c in self.coeff1.items()}
        )

    def __sub__(self, other: PiSeries) -> PiSeries:
        return self + (-other)

    def __mul__(self, other: PiSeries) -> PiSeries:
        # valuations bound how far each factor is known
        order = min(self.order + other.lower, other.order + self.lower)
        c0: dict[int, Number] = {}
        c1: dict[int, Number] = {}
        for e1, a in self.coeff0.items():
            for e2, b in other.coeff0.items():
                c0[e1 + e2] = c0.get(e1 + e2, 0) + a * b
            for e2, b in other.coeff1.items():
                c1[e1 + e2] = c1.get(e1 + e2, 0) + a * b
        for e1, a in self.coeff1.items():
            for e2, b in other.coeff0.items():
                c1[e1 + e2] = c1.get(e1 + e2, 0) + a * b
            for e2, b in other.coeff1.items():
                c0[e1 + e2] = c0.get(e1 + e2, 0) + a * b
        return PiSeries.build(order, c0, c1)

    def truncate(self, order: int) -> PiSeries:
        return PiSeries.build(min(order, self.order), self.coeff0, self.coeff1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiSeries):
            return NotImplemented
        order = min(self.order, other.order)
        a, b = self.truncate(order), other.truncate(order)
        return a.coeff0 == b.coeff0 and a.coeff1 == b.coeff1

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self.coeff0.items()), frozenset(self.coeff1.items())))

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "order": self.order,
            "one": [[e, str(Fraction(c))] for e, c in sorted(self.coeff0.items())],
            "pi": [[e, str(Fraction(c))] for e, c in sorted(self.coeff1.items())],
        }


def _expand_component(value: RationalFunc, order: int) -> dict[int, Fraction]:
    num, den = value.num, value.den
    if num.is_zero():
        return {}
    # canonical denominators have q-valuation 0
    d0 = den.coeff(0)
    low = num.valuation()
    length = order - low + 1
    if length <= 0:
        return {}
    inverse = [Fraction(0)] * length
    inverse[0] = Fraction(1) / Fraction(d0)
    den_terms = dict(den.items())
    for n in range(1, length):
        acc = Fraction(0)
        for k in range(1, n + 1):
            dk = den_terms.get(k)
            if dk:
                acc += dk * inverse[n - k]
        inverse[n] = -acc * inverse[0]
    out: dict[int, Fraction] = {}
    for exp, coeff in num.items():
        for k in range(0, order - exp + 1):
            if inverse[k]:
                out[exp + k] = out.get(exp + k, 0) + coeff * inverse[k]
    return out


def series_expand(x: PiScalar, order: int) -> PiSeries:
    """Laurent expansion at q = 0 of both specializations, truncated at q^order."""
    plus = _expand_component(x.plus, order)
    minus = _expand_component(x.minus, order)
    return PiSeries.from_specializations(order, plus, minus)


def sum_pi(values: Iterable[PiScalar]) -> PiScalar:
    total = PI_ZERO
    for v in values:
        total = total + v
    return total
