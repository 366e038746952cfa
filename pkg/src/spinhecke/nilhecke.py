"""
The (spin) nilHecke algebra NH_n, realized as H(n alpha_i) for a single node:
divided differences, Demazure operators, the idempotent e_n, odd symmetric
functions and the graded dimension identities.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .linalg import sparse_rank
from .polyrep import (
    HeckeElement,
    Monomial,
    PolynomialRepresentation,
    PolyVector,
    e,
    format_monomial,
    tau,
    y,
)
from .ring import LaurentPoly, PiScalar, PiSeries, pi_q, quantum_factorial, series_expand
from .rootdata import RootDatum, Weight, builtin_datum

logger = logging.getLogger(__name__)

NODE = "i"


class IdempotencyFailure(AssertionError):
    """e_n is not idempotent as an operator."""


def rank_one_datum(parity: int) -> RootDatum:
    return builtin_datum("osp12" if parity else "sl2")


def w0_word(n: int) -> tuple[int, ...]:
    """The fixed reduced word of w0<n> = s_1 s_2 ... s_n-1 w0<n-1>."""
    if n <= 1:
        return ()
    return tuple(range(1, n)) + w0_word(n - 1)


def shift_word(word: Iterable[int], by: int = 1) -> tuple[int, ...]:
    """The dagger embedding: s_r -> s_r+by."""
    return tuple(r + by for r in word)


def partitions(total: int, largest: int) -> list[tuple[int, ...]]:
    """Partitions of total with parts at most largest, largest parts first."""
    if total == 0:
        return [()]
    out = []
    for part in range(min(total, largest), 0, -1):
        out.extend((part,) + rest for rest in partitions(total - part, part))
    return out


class NilHecke:
    """NH_n^+ (parity 0) or NH_n^- (parity 1) acting on k[y_1, ..., y_n]^+-."""

    def __init__(self, n: int, parity: int):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        self.parity = parity
        self.datum = rank_one_datum(parity)
        self.rep = PolynomialRepresentation(self.datum, Weight.of(self.datum, {NODE: n}))
        self.component = (NODE,) * n

    def __repr__(self) -> str:
        return f"NilHecke(n={self.n}, parity={self.parity})"

    @property
    def sign(self) -> int:
        """The +-1 of the superscript."""
        return -1 if self.parity else 1

    def word(self, *gens) -> HeckeElement:
        return HeckeElement.word(*gens, e(self.component))

    def identity(self) -> HeckeElement:
        return self.word()

    def d(self, r: int) -> HeckeElement:
        return self.word(tau(r))

    def d_word(self, indices: Iterable[int]) -> HeckeElement:
        return self.word(*[tau(r) for r in indices])

    def demazure(self, r: int) -> HeckeElement:
        """bar-d_r = c d_r y_r with c the convention sign for this parity."""
        c = self.rep.conventions.demazure_sign(self.parity)
        return self.word(tau(r), y(r)) * c

    def demazure_word(self, indices: Iterable[int]) -> HeckeElement:
        out = self.identity()
        for r in indices:
            out = _compose(out, self.demazure(r))
        return out

    def delta_w0(self, dagger: bool = False) -> HeckeElement:
        """d_w0 for the fixed reduced word, or its alternative reduced form d_n-1 ... d_1 d_dagger-w0<n-1>."""
        if dagger:
            return self.d_word(tuple(range(self.n - 1, 0, -1)) + shift_word(w0_word(self.n - 1)))
        return self.d_word(w0_word(self.n))

    def y_delta(self) -> HeckeElement:
        """y^delta_n = (-1)^C(n-1, 2) y_1^(n-1) y_2^(n-2) ... y_n-1."""
        gens = []
        for r in range(1, self.n):
            gens.extend([y(r)] * (self.n - r))
        return self.word(*gens) * ((-1) ** comb(self.n - 1, 2))

    def e_n(self) -> HeckeElement:
        """e_n = bar-d_w0."""
        return self.demazure_word(w0_word(self.n))

    def e_smaller(self, dagger: bool = False) -> HeckeElement:
        """e_n-1 embedded on the first n-1 strands, or on the last n-1 strands when dagger."""
        word = w0_word(self.n - 1)
        return self.demazure_word(shift_word(word) if dagger else word)

    def divided_difference(self, r: int, vector: PolyVector) -> PolyVector:
        return self.rep.act(tau(r), vector)

    @cached_property
    def _default_test(self) -> list[Monomial]:
        return self.test_monomials(6)

    def test_monomials(self, cap: int) -> list[Monomial]:
        monos = self.rep.monomials(cap)
        seen = set(monos)
        return monos + [m for m in self.rep.module_generators() if m not in seen]

    def compare(self, lhs: HeckeElement, rhs: HeckeElement, cap: int | None = None) -> dict:
        """Find c with lhs = c rhs on the test monomials."""
        monos = self.test_monomials(cap) if cap is not None else self._default_test
        return compare_operators(self.rep, lhs, rhs, monos)


def _compose(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """a b, dropping the idempotent between the factors."""
    out: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            word = w1[:-1] + w2 if w1 and w1[-1][0] == "e" else w1 + w2
            out[word] = out.get(word, 0) + c1 * c2
    return HeckeElement(out)


def compare_operators(
    rep: PolynomialRepresentation, lhs: HeckeElement, rhs: HeckeElement, monos: Sequence[Monomial]
) -> dict:
    """
    Compare two elements through their action.

    Returns:
        {"scalar": c as a string or None, "literal": lhs == rhs, "proportional": lhs == c rhs with c != 0,
         "witness": a monomial where proportionality fails, if any}.
    """
    scalar: Optional[Fraction] = None
    witness = None
    images = []
    for mono in monos:
        left = rep.apply_to_monomial(lhs, mono)
        right = rep.apply_to_monomial(rhs, mono)
        images.append((mono, left, right))
        if scalar is None and right:
            key = next(iter(sorted(right)))
            scalar = Fraction(left.get(key, 0)) / right[key]
            if scalar == 0:
                # lhs vanishes where rhs does not
                witness = mono
    if witness is None:
        for mono, left, right in images:
            expected = {k: (scalar or 0) * c for k, c in right.items()}
            expected = {k: c for k, c in expected.items() if c}
            if left != expected:
                witness = mono
                break
    proportional = witness is None
    if scalar is None:
        # rhs acts as zero
        literal = proportional
    else:
        literal = proportional and scalar == 1
    return {
        "scalar": str(scalar) if scalar is not None else None,
        "literal": literal,
        "proportional": proportional,
        "witness": format_monomial(witness) if witness is not None else None,
    }


@lru_cache(maxsize=None)
def nil_hecke(n: int, parity: int) -> NilHecke:
    return NilHecke(n, parity)


def nil_coxeter_check(n: int, parity: int, cap: int) -> dict:
    """(d_r)^2 = 0, d_r d_s = +-d_s d_r for |r - s| > 1, and the braid relation."""
    nh = nil_hecke(n, parity)
    checks = {}
    for r in range(1, n):
        checks[f"square:{r}"] = nh.compare(nh.d_word((r, r)), HeckeElement(), cap)["literal"]
    for r in range(1, n):
        for s in range(r + 2, n):
            checks[f"distant:{r},{s}"] = nh.compare(nh.d_word((r, s)), nh.d_word((s, r)) * nh.sign, cap)["literal"]
    for r in range(1, n - 1):
        checks[f"braid:{r}"] = nh.compare(nh.d_word((r, r + 1, r)), nh.d_word((r + 1, r, r + 1)), cap)["literal"]
    return {"n": n, "parity": parity, "D": cap, "checks": checks, "passed": all(checks.values())}


def demazure_check(n: int, parity: int, cap: int) -> dict:
    """bar-d_r is idempotent, satisfies the braid relation and commutes at distance."""
    nh = nil_hecke(n, parity)
    checks = {}
    for r in range(1, n):
        checks[f"idempotent:{r}"] = nh.compare(nh.demazure_word((r, r)), nh.demazure(r), cap)["literal"]
    for r in range(1, n):
        for s in range(r + 2, n):
            checks[f"distant:{r},{s}"] = nh.compare(nh.demazure_word((r, s)), nh.demazure_word((s, r)), cap)["literal"]
    for r in range(1, n - 1):
        checks[f"braid:{r}"] = nh.compare(
            nh.demazure_word((r, r + 1, r)), nh.demazure_word((r + 1, r, r + 1)), cap
        )["literal"]
    return {"n": n, "parity": parity, "D": cap, "checks": checks, "passed": all(checks.values())}


def e_n_check(n: int, parity: int, cap: int | None = None, strict: bool = False) -> dict:
    nh = nil_hecke(n, parity)
    en = nh.e_n()
    result = nh.compare(_compose(en, en), en, cap)
    if strict and not result["literal"]:
        raise IdempotencyFailure(f"e_{n} with parity {parity} is not idempotent: witness {result['witness']}")
    return result


def closed_form_sign(n: int, parity: int) -> int:
    """The scalar c in e_n = c d_w0 y^delta_n under the shipped conventions."""
    return 1 if parity else (-1) ** (n - 1)


def annihilator_signs(n: int, parity: int) -> tuple[int, int]:
    """
    The scalars of e_n in d_n-1 ... d_1 y_1^(n-1) e_n and in d_1 ... d_n-1 y_n^(n-1) e_n.

    Both are read off on the constant 1, which e_n fixes.
    """
    twist = (-1) ** (parity * comb(n - 1, 2))
    return twist * (-1) ** ((1 - parity) * (n - 1)), twist


def e_n_closed_form(n: int, parity: int, cap: int | None = None) -> dict:
    """e_n against closed_form_sign(n, parity) d_w0 y^delta_n."""
    nh = nil_hecke(n, parity)
    rhs = _compose(nh.delta_w0(), nh.y_delta()) * closed_form_sign(n, parity)
    return nh.compare(nh.e_n(), rhs, cap)


def e_n_absorbs_delta(n: int, parity: int, cap: int | None = None) -> dict:
    """e_n d_w0 against d_w0."""
    nh = nil_hecke(n, parity)
    return nh.compare(_compose(nh.e_n(), nh.delta_w0()), nh.delta_w0(), cap)


def e_n_chain_identities(n: int, parity: int, cap: int | None = None) -> dict[str, dict]:
    """
    e_n-1 e_n = e_n and dagger-e_n-1 e_n = e_n, then the crossings
    e_n d_1 ... d_n-1 e_n-1 = d_1 ... d_n-1 e_n-1 and e_n d_n-1 ... d_1 dagger-e_n-1 = d_n-1 ... d_1 dagger-e_n-1.
    """
    nh = nil_hecke(n, parity)
    en = nh.e_n()
    out = {}
    for dagger in (False, True):
        tag = "dagger_" if dagger else ""
        small = nh.e_smaller(dagger)
        out[f"{tag}mult"] = nh.compare(_compose(small, en), en, cap)
        chain = nh.d_word(range(n - 1, 0, -1) if dagger else range(1, n))
        rhs = _compose(chain, small)
        out[f"{tag}crossing"] = nh.compare(_compose(en, rhs), rhs, cap)
    return out


def e_n_annihilators(n: int, parity: int, cap: int | None = None) -> dict[str, dict]:
    """
    d_n-1 ... d_1 y_1^a e_n and d_1 ... d_n-1 y_n^a e_n against the multiples of e_n
    from annihilator_signs when a = n - 1, and against 0 when a < n - 1.
    """
    nh = nil_hecke(n, parity)
    en = nh.e_n()
    descending_sign, ascending_sign = annihilator_signs(n, parity)
    out = {}
    for a in range(n):
        first = _compose(nh.word(*[tau(r) for r in range(n - 1, 0, -1)], *[y(1)] * a), en)
        target = en * descending_sign if a == n - 1 else HeckeElement()
        out[f"descending:a={a}"] = nh.compare(first, target, cap)
        second = _compose(nh.word(*[tau(r) for r in range(1, n)], *[y(n)] * a), en)
        target = en * ascending_sign if a == n - 1 else HeckeElement()
        out[f"ascending:a={a}"] = nh.compare(second, target, cap)
    return out


def delta_shift_check(n: int, parity: int, cap: int | None = None) -> dict:
    """d_w0 against d_n-1 ... d_1 d_dagger-w0<n-1>."""
    nh = nil_hecke(n, parity)
    return nh.compare(nh.delta_w0(), nh.delta_w0(dagger=True), cap)


def idempotent_suite(n: int, parity: int, cap: int | None = None) -> dict:
    """Every identity about e_n with its scalar; the suite passes when each one holds literally."""
    logger.info(f"Running the idempotent suite for n={n}, parity={parity}")
    report = {
        "n": n,
        "parity": parity,
        "idempotent": e_n_check(n, parity, cap),
        "closed_form": e_n_closed_form(n, parity, cap),
        "absorbs_delta": e_n_absorbs_delta(n, parity, cap),
        "delta_shift": delta_shift_check(n, parity, cap),
    }
    report.update({f"chain.{k}": v for k, v in e_n_chain_identities(n, parity, cap).items()})
    report.update({f"annihilators.{k}": v for k, v in e_n_annihilators(n, parity, cap).items()})
    failing = [k for k, v in report.items() if isinstance(v, dict) and not v["literal"]]
    if failing:
        logger.warning(f"Idempotent identities not literal for n={n}, parity={parity}: {', '.join(failing)}")
    report["passed"] = not failing
    return report


def odd_elementary(k: int, n: int, parity: int) -> PolyVector:
    """epsilon_k = sum over r_1 < ... < r_k of (+-1)^(r_1 + ... + r_k - k) y_r1 ... y_rk."""
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    nh = nil_hecke(n, parity)
    terms = {}
    for rs in combinations(range(1, n + 1), k):
        exps = tuple(1 if r in rs else 0 for r in range(1, n + 1))
        terms[(nh.component, exps)] = nh.sign ** (sum(rs) - k)
    return PolyVector(terms)


def _multiply(rep: PolynomialRepresentation, left: PolyVector, right: PolyVector) -> PolyVector:
    out = PolyVector()
    for (ui, exps), c in left.terms.items():
        word = []
        for r, a in enumerate(exps, start=1):
            word.extend([y(r)] * a)
        out = out + rep.apply(HeckeElement.word(*word), right) * c
    return out


def elementary_product(n: int, parity: int, lam: Sequence[int]) -> PolyVector:
    nh = nil_hecke(n, parity)
    out = PolyVector.monomial(nh.component, (0,) * n)
    for part in reversed(lam):
        out = _multiply(nh.rep, odd_elementary(part, n, parity), out)
    return out


def in_symmetric_kernel(n: int, parity: int, vector: PolyVector) -> bool:
    nh = nil_hecke(n, parity)
    return all(nh.divided_difference(r, vector).is_zero() for r in range(1, n))


def lambda_basis_check(n: int, parity: int, degree: int) -> dict:
    """The products epsilon_lambda with 2|lambda| <= degree are independent and annihilated by every d_r."""
    lambdas = [lam for total in range(degree // 2 + 1) for lam in partitions(total, n)]
    vectors = [elementary_product(n, parity, lam) for lam in lambdas]
    in_kernel = all(in_symmetric_kernel(n, parity, v) for v in vectors)
    rank = sparse_rank([v.terms for v in vectors])
    return {
        "n": n,
        "parity": parity,
        "count": len(vectors),
        "rank": rank,
        "in_kernel": in_kernel,
        "passed": in_kernel and rank == len(vectors),
    }


def _mahonian(n: int) -> list[int]:
    """Number of permutations of S_n by length."""
    counts = [1]
    for k in range(2, n + 1):
        nxt = [0] * (len(counts) + k - 1)
        for length, c in enumerate(counts):
            for extra in range(k):
                nxt[length + extra] += c
        counts = nxt
    return counts


def pbw_count_series(n: int, parity: int, s: int, order: int) -> PiSeries:
    """Count of the PBW basis tau_w y^a e(i^n) by (degree, parity), up to degree order."""
    counts: dict[tuple[int, int], int] = {}
    for length, mult in enumerate(_mahonian(n)):
        k = 0
        while 2 * s * (k - length) <= order:
            key = (2 * s * (k - length), parity * (k + length) % 2)
            counts[key] = counts.get(key, 0) + mult * comb(k + n - 1, n - 1)
            k += 1
    return PiSeries.from_counts(order, counts)


def nilhecke_closed_form(n: int, parity: int, s: int = 1) -> PiScalar:
    """(pi_i q_i)^-C(n, 2) [n]_i! / (1 - pi_i q_i^2)^n."""
    return pi_q(parity * comb(n, 2), -s * comb(n, 2)) * quantum_factorial(n, s, parity) / _one_minus(parity, s) ** n


def _one_minus(parity: int, s: int) -> PiScalar:
    """1 - pi_i q_i^2."""
    return PiScalar.of(LaurentPoly({0: 1, 2 * s: -1}), LaurentPoly({0: 1, 2 * s: -((-1) ** parity)}))


def nilhecke_dim(n: int, parity: int, cap: int, s: int = 1) -> dict:
    """The PBW count against the expansion of the closed form, up to degree cap."""
    closed = nilhecke_closed_form(n, parity, s)
    counted = pbw_count_series(n, parity, s, cap)
    expanded = series_expand(closed, cap)
    return {
        "n": n,
        "parity": parity,
        "s": s,
        "D": cap,
        "closed_form": closed.to_json(),
        "series": counted.to_json(),
        "agreement": counted == expanded,
    }


def lambda_count_series(n: int, parity: int, s: int, order: int) -> PiSeries:
    """Count of the products epsilon_lambda by (degree, parity)."""
    counts: dict[tuple[int, int], int] = {}
    total = 0
    while 2 * s * total <= order:
        for lam in partitions(total, n):
            key = (2 * s * total, parity * sum(lam) % 2)
            counts[key] = counts.get(key, 0) + 1
        total += 1
    return PiSeries.from_counts(order, counts)


def lambda_closed_forms(n: int, parity: int, s: int = 1) -> tuple[PiScalar, PiScalar]:
    """(literal, corrected): (pi_i q_i)^-C(n,2) and q_i^-C(n,2) over [n]_i! (1 - pi_i q_i^2)^n."""
    base = quantum_factorial(n, s, parity) * _one_minus(parity, s) ** n
    literal = pi_q(parity * comb(n, 2), -s * comb(n, 2)) / base
    corrected = pi_q(0, -s * comb(n, 2)) / base
    return literal, corrected


def lambda_dim(n: int, parity: int, cap: int, s: int = 1) -> dict:
    counted = lambda_count_series(n, parity, s, cap)
    literal, corrected = lambda_closed_forms(n, parity, s)
    return {
        "n": n,
        "parity": parity,
        "D": cap,
        "series": counted.to_json(),
        "literal_agrees": counted == series_expand(literal, cap),
        "corrected_agrees": counted == series_expand(corrected, cap),
    }


def matrix_dims_check(n: int, parity: int, cap: int, s: int = 1) -> dict:
    """dim NH_n = m bar(m) dim Lambda_n with m = (pi_i q_i)^C(n,2) [n]_i!, exactly and as series."""
    m = pi_q(parity * comb(n, 2), s * comb(n, 2)) * quantum_factorial(n, s, parity)
    _, corrected = lambda_closed_forms(n, parity, s)
    exact = m * m.bar() * corrected == nilhecke_closed_form(n, parity, s)
    lowest = -2 * s * comb(n, 2)
    # the rank factor starts at q^lowest, so the Lambda series needs cap - lowest terms
    rank_series = series_expand(m * m.bar(), cap)
    product = rank_series * lambda_count_series(n, parity, s, cap - lowest)
    series = product.truncate(cap) == pbw_count_series(n, parity, s, cap)
    return {"n": n, "parity": parity, "D": cap, "exact": exact, "series": series, "passed": exact and series}
