"""
The spin quiver Hecke algebra H(nu) acting on its polynomial representation.

Elements of H(nu) are formal combinations of generator words. Two elements are
compared through their action on the skew polynomial space P(nu), either on
every monomial up to a degree cap or on a finite set of module generators over
the symmetric polynomials in y_r^(1 + p(i_r)).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from . import perms
from .config import Conventions, load_conventions
from .linalg import NotInSpan, solve_in_span, sparse_rank
from .rootdata import RootDatum, SkewBivarPoly, Weight, enumerate_sequences

logger = logging.getLogger(__name__)

Component = tuple  # a sequence i in I^nu
Exponents = tuple  # (a_1, ..., a_n)
Monomial = tuple  # (component, exponents) for y_1^a_1 ... y_n^a_n e(i)
Gen = tuple  # ("e", component) | ("y", r) | ("t", r)
GenWord = tuple


class RelationFailure(AssertionError):
    """A defining relation does not hold in the representation."""

    def __init__(self, relation: str, component, monomial, message: str = ""):
        self.relation = relation
        self.component = component
        self.monomial = monomial
        super().__init__(message or f"{relation} fails on {format_monomial(monomial)}")


def e(ui: Iterable[str]) -> Gen:
    return ("e", tuple(ui))


def y(r: int) -> Gen:
    return ("y", r)


def tau(r: int) -> Gen:
    return ("t", r)


def format_gen(gen: Gen) -> str:
    kind, arg = gen
    if kind == "e":
        return f"e({','.join(arg)})"
    return f"{'tau' if kind == 't' else 'y'}{arg}"


def format_word(word: GenWord) -> str:
    return " ".join(format_gen(g) for g in word) or "1"


def format_monomial(mono: Monomial) -> str:
    ui, exps = mono
    ys = " ".join(f"y{r}^{a}" if a > 1 else f"y{r}" for r, a in enumerate(exps, start=1) if a)
    return f"{ys or '1'} e({','.join(ui)})"


class HeckeElement:
    """Finite combination of generator words with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[GenWord, Fraction | int] | None = None):
        self.terms = {tuple(w): Fraction(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, *gens: Gen, coeff: Fraction | int = 1) -> HeckeElement:
        return cls({tuple(gens): coeff})

    @classmethod
    def one(cls) -> HeckeElement:
        return cls({(): 1})

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return HeckeElement(out)

    def __neg__(self) -> HeckeElement:
        return HeckeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def __mul__(self, other) -> HeckeElement:
        if isinstance(other, (int, Fraction)):
            return HeckeElement({w: c * other for w, c in self.terms.items()})
        out: dict[GenWord, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return HeckeElement(out)

    def __rmul__(self, other) -> HeckeElement:
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return " + ".join(f"{c}*[{format_word(w)}]" for w, c in sorted(self.terms.items())) or "0"


class PolyVector:
    """Element of P(nu) in the normal-form monomial basis."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, ui: Iterable[str], exps: Iterable[int], coeff: Fraction | int = 1) -> PolyVector:
        return cls({(tuple(ui), tuple(exps)): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: PolyVector) -> PolyVector:
        return PolyVector(_add(self.terms, other.terms))

    def __sub__(self, other: PolyVector) -> PolyVector:
        return PolyVector(_add(self.terms, other.terms, -1))

    def __mul__(self, scalar) -> PolyVector:
        return PolyVector({m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def to_json(self) -> list:
        return [[format_monomial(m), str(c)] for m, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{format_monomial(m)}" for m, c in sorted(self.terms.items())) or "0"


def _add(left: Mapping, right: Mapping, scale=1) -> dict:
    out = dict(left)
    for k, c in right.items():
        value = out.get(k, 0) + scale * c
        if value:
            out[k] = value
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True, order=True)
class BasisElement:
    """tau_w y^a e(i) for the canonical reduced word of w."""

    w: tuple
    exps: tuple
    ui: tuple

    def word(self) -> GenWord:
        gens = [tau(k) for k in perms.reduced_word(self.w)]
        for r, a in enumerate(self.exps, start=1):
            gens.extend([y(r)] * a)
        gens.append(e(self.ui))
        return tuple(gens)

    def label(self) -> str:
        return format_word(self.word())


def tau_w(w: Sequence[int], ui: Iterable[str] | None = None) -> GenWord:
    """tau_w for the lexicographically smallest reduced word of w, optionally followed by e(i)."""
    gens = tuple(tau(k) for k in perms.reduced_word(w))
    return gens + ((e(ui),) if ui is not None else ())


class PolynomialRepresentation:
    """
    The faithful action of H(nu) on P(nu) = sum over i in I^nu of k[y]^- e(i).

    Generator actions on monomials are cached; the object is otherwise immutable.
    """

    def __init__(self, datum: RootDatum, weight: Weight, conventions: Conventions | None = None):
        self.datum = datum
        self.weight = weight
        self.conventions = conventions or load_conventions()
        self.components: list[Component] = enumerate_sequences(datum, weight)
        self.n = weight.height
        self._parities = {ui: tuple(datum.p(i) for i in ui) for ui in self.components}
        self._degrees = {ui: tuple(datum.pair(i, i) for i in ui) for ui in self.components}
        self._offsets = {ui: self._inversion_offset(ui) for ui in self.components}
        self._cache: dict[tuple[Gen, Monomial], dict[Monomial, Fraction]] = {}
        self._dd_cache: dict[tuple[int, Monomial], dict[Exponents, Fraction]] = {}

    def __repr__(self) -> str:
        return f"PolynomialRepresentation({self.datum.name}, {self.weight})"

    # monomial arithmetic

    def degree(self, mono: Monomial) -> int:
        ui, exps = mono
        return sum(a * d for a, d in zip(exps, self._degrees[ui]))

    def parity(self, mono: Monomial) -> int:
        ui, exps = mono
        return sum(a * p for a, p in zip(exps, self._parities[ui])) % 2

    def _inversion_offset(self, ui: Component) -> tuple[int, int]:
        degree, parity = 0, 0
        for a, b in combinations(ui, 2):
            if self.datum.less(b, a):
                degree += self.datum.pair(a, b)
                parity += self.datum.p(a) * self.datum.p(b)
        return degree, parity % 2

    def offset(self, ui: Component) -> tuple[int, int]:
        """
        Bidegree of e(ui) in the grading of P(nu) that makes every generator homogeneous.

        Each pair of positions r < s with i_s < i_r in the node order adds
        ((alpha_i_r, alpha_i_s), p(i_r) p(i_s)): P_ij has degree -2(alpha_i, alpha_j) when i < j
        and 0 when i > j, against -(alpha_i, alpha_j) for tau_r.
        """
        return self._offsets[ui]

    def bidegree(self, mono: Monomial) -> tuple[int, int]:
        """(degree, parity) of a monomial, component offset included."""
        degree, parity = self._offsets[mono[0]]
        return self.degree(mono) + degree, (self.parity(mono) + parity) % 2

    def _product_sign(self, ui: Component, left: Exponents, right: Exponents) -> int:
        """y^left y^right = sign * y^(left + right), from y_s y_t = (-1)^(p_s p_t) y_t y_s."""
        par = self._parities[ui]
        odd_right = 0
        exponent = 0
        for s in range(self.n):
            if par[s]:
                exponent += left[s] * odd_right
                odd_right += right[s]
        return -1 if exponent % 2 else 1

    def _mul_exps(self, ui: Component, left: Exponents, right: Exponents) -> tuple[int, Exponents]:
        sign = self._product_sign(ui, left, right)
        return sign, tuple(a + b for a, b in zip(left, right))

    def _unit(self, r: int, power: int = 1) -> Exponents:
        exps = [0] * self.n
        exps[r - 1] = power
        return tuple(exps)

    def sym(self, k: int, mono: Monomial) -> tuple[int, Monomial]:
        """
        s_k on a monomial, extended multiplicatively from
        s_k(y_r e(i)) = (-1)^(p(i_k)p(i_k+1)p(i_r)) y_s_k(r) e(s_k i).
        """
        ui, exps = mono
        par = self._parities[ui]
        swap_parity = par[k - 1] * par[k]
        exponent = swap_parity * sum(a * p for a, p in zip(exps, par))
        # reordering y_k+1^a_k y_k^a_k+1 into normal form
        exponent += exps[k - 1] * exps[k] * swap_parity
        new_exps = list(exps)
        new_exps[k - 1], new_exps[k] = exps[k], exps[k - 1]
        return (-1 if exponent % 2 else 1), (perms.swap(ui, k), tuple(new_exps))

    def skew_to_poly(self, poly: SkewBivarPoly, ui: Component, u_var: int, v_var: int) -> dict[Exponents, int]:
        """poly(y_u, y_v) in component ui, in normal form."""
        out: dict[Exponents, int] = {}
        for (a, b), c in poly.coeffs.items():
            sign, exps = self._mul_exps(ui, self._unit(u_var, a), self._unit(v_var, b))
            out[exps] = out.get(exps, 0) + sign * c
        return {k: c for k, c in out.items() if c}

    # generator actions on monomials

    def _act_y(self, r: int, mono: Monomial) -> dict[Monomial, Fraction]:
        ui, exps = mono
        sign, new = self._mul_exps(ui, self._unit(r), exps)
        return {(ui, new): Fraction(sign)}

    def _divided_difference(self, r: int, mono: Monomial) -> dict[Exponents, Fraction]:
        """
        The divided difference at equal neighbours, by the twisted Leibniz rule
        d(fg) = d(f) g + s_r(f) d(g), peeling off the leftmost variable.
        """
        key = (r, mono)
        cached = self._dd_cache.get(key)
        if cached is not None:
            return cached
        ui, exps = mono
        nonzero = [k for k, a in enumerate(exps, start=1) if a]
        if not nonzero:
            self._dd_cache[key] = {}
            return {}
        k = nonzero[0]
        rest = list(exps)
        rest[k - 1] -= 1
        rest = tuple(rest)
        odd = self._parities[ui][r - 1]
        out: dict[Exponents, Fraction] = {}
        if k == r:
            out[rest] = Fraction(1 if odd else -1)
        elif k == r + 1:
            out[rest] = Fraction(1)
        # s_r(y_k) = (-1)^(p(i) p(i_k)) y_s_r(k)
        image = r + 1 if k == r else r if k == r + 1 else k
        sign = -1 if odd and self._parities[ui][k - 1] else 1
        for sub, c in self._divided_difference(r, (ui, rest)).items():
            s2, new = self._mul_exps(ui, self._unit(image), sub)
            out[new] = out.get(new, 0) + sign * s2 * c
        result = {k2: c for k2, c in out.items() if c}
        self._dd_cache[key] = result
        return result

    def _act_tau(self, r: int, mono: Monomial) -> dict[Monomial, Fraction]:
        ui, exps = mono
        i, j = ui[r - 1], ui[r]
        conv = self.conventions
        if i == j:
            scale = conv.tau_equal_odd if self.datum.p(i) else conv.tau_equal_even
            return {(ui, k): scale * c for k, c in self._divided_difference(r, mono).items()}
        sign, (uj, swapped) = self.sym(r, mono)
        poly = self.skew_to_poly(self.datum.p_poly(i, j), uj, r + 1, r)
        out: dict[Monomial, Fraction] = {}
        for p_exps, c in poly.items():
            s2, new = self._mul_exps(uj, p_exps, swapped)
            key = (uj, new)
            out[key] = out.get(key, 0) + conv.tau_unequal * sign * s2 * c
        return {k: Fraction(c) for k, c in out.items() if c}

    def act_on_monomial(self, gen: Gen, mono: Monomial) -> dict[Monomial, Fraction]:
        key = (gen, mono)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        kind, arg = gen
        if kind == "e":
            result = {mono: Fraction(1)} if mono[0] == arg else {}
        elif kind == "y":
            result = self._act_y(arg, mono)
        elif kind == "t":
            result = self._act_tau(arg, mono)
        else:
            raise ValueError(f"Unknown generator {gen!r}")
        self._cache[key] = result
        return result

    def act(self, gen: Gen, vector: PolyVector) -> PolyVector:
        out: dict[Monomial, Fraction] = {}
        for mono, c in vector.terms.items():
            for image, c2 in self.act_on_monomial(gen, mono).items():
                out[image] = out.get(image, 0) + c * c2
        return PolyVector(out)

    def apply_word(self, word: GenWord, terms: Mapping[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        current = dict(terms)
        for gen in reversed(word):
            nxt: dict[Monomial, Fraction] = {}
            for mono, c in current.items():
                for image, c2 in self.act_on_monomial(gen, mono).items():
                    nxt[image] = nxt.get(image, 0) + c * c2
            current = {m: c for m, c in nxt.items() if c}
            if not current:
                break
        return current

    def apply(self, x: HeckeElement, vector: PolyVector) -> PolyVector:
        out: dict[Monomial, Fraction] = {}
        for word, c in x.terms.items():
            out = _add(out, self.apply_word(word, vector.terms), c)
        return PolyVector(out)

    def apply_to_monomial(self, x: HeckeElement, mono: Monomial) -> dict[Monomial, Fraction]:
        out: dict[Monomial, Fraction] = {}
        for word, c in x.terms.items():
            out = _add(out, self.apply_word(word, {mono: Fraction(1)}), c)
        return out

    # test monomials

    def _exponents_up_to(self, ui: Component, cap: int, floor: int = 0) -> Iterator[Exponents]:
        degs = self._degrees[ui]

        def extend(k: int, budget: int, acc: list[int]):
            if k == self.n:
                if cap - budget >= floor:
                    yield tuple(acc)
                return
            a = 0
            while a * degs[k] <= budget:
                yield from extend(k + 1, budget - a * degs[k], acc + [a])
                a += 1

        if cap >= 0:
            yield from extend(0, cap, [])

    def monomials(self, cap: int, ui: Component | None = None) -> list[Monomial]:
        """Normal-form monomials of Z-degree at most cap, by component then degree."""
        comps = [ui] if ui is not None else self.components
        out = []
        for comp in comps:
            monos = [(comp, exps) for exps in self._exponents_up_to(comp, cap)]
            out.extend(sorted(monos, key=lambda m: (self.degree(m), m[1])))
        return out

    def module_generators(self, ui: Component | None = None) -> list[Monomial]:
        """
        Generators of P(nu) over the symmetric polynomials in z_r = y_r^(1 + p(i_r)):
        y^eps z^b with eps_r <= p(i_r) and b_r below the number of earlier positions of colour i_r.
        """
        comps = [ui] if ui is not None else self.components
        out = []
        for comp in comps:
            par = self._parities[comp]
            bounds = []
            seen: dict[str, int] = {}
            for letter in comp:
                bounds.append(seen.get(letter, 0))
                seen[letter] = seen.get(letter, 0) + 1
            choices: list[list[int]] = [[]]
            for r in range(self.n):
                options = []
                for b in range(bounds[r] + 1):
                    for eps in range(par[r] + 1):
                        options.append(eps + b * (1 + par[r]))
                choices = [prev + [a] for prev in choices for a in options]
            monos = [(comp, tuple(exps)) for exps in choices]
            out.extend(sorted(monos, key=lambda m: (self.degree(m), m[1])))
        return out

    # words

    def word_bidegree(self, word: GenWord) -> Optional[tuple[int, int]]:
        """(degree, parity) of a word ending in an idempotent, or None when it is zero."""
        if not word or word[-1][0] != "e":
            raise ValueError(f"Word {format_word(word)} does not end in an idempotent")
        comp = word[-1][1]
        degree, parity = 0, 0
        for kind, arg in reversed(word[:-1]):
            if kind == "e":
                if arg != comp:
                    return None
            elif kind == "y":
                degree += self.datum.pair(comp[arg - 1], comp[arg - 1])
                parity += self.datum.p(comp[arg - 1])
            else:
                i, j = comp[arg - 1], comp[arg]
                degree -= self.datum.pair(i, j)
                parity += self.datum.p(i) * self.datum.p(j)
                comp = perms.swap(comp, arg)
        return degree, parity % 2

    def with_idempotents(self, x: HeckeElement) -> HeckeElement:
        """x times the sum of all e(i), with vanishing words dropped."""
        out: dict[GenWord, Fraction] = {}
        for word, c in x.terms.items():
            if word and word[-1][0] == "e":
                candidates = [word]
            else:
                candidates = [word + (e(ui),) for ui in self.components]
            for cand in candidates:
                if self.word_bidegree(cand) is not None:
                    out[cand] = out.get(cand, 0) + c
        return HeckeElement(out)

    def basis_elements(self, low: int, high: int, ui: Component | None = None) -> list[BasisElement]:
        """Elements tau_w y^a e(i) of the PBW basis with degree in [low, high]."""
        comps = [ui] if ui is not None else self.components
        out = []
        for comp in comps:
            for w in perms.all_permutations(self.n):
                base = self.word_bidegree(tau_w(w, comp))[0]
                for exps in self._exponents_up_to(comp, high - base, low - base):
                    out.append(BasisElement(w, exps, comp))
        return out

    def basis_degree(self, b: BasisElement) -> int:
        return self.word_bidegree(b.word())[0]

    def action_vector(self, x: HeckeElement, test: Sequence[Monomial]) -> dict[tuple[Monomial, Monomial], Fraction]:
        vec = {}
        for mono in test:
            for image, c in self.apply_to_monomial(x, mono).items():
                vec[(mono, image)] = c
        return vec


@dataclass
class TruncatedOperator:
    """The action of an element on every monomial of degree at most cap."""

    rep: PolynomialRepresentation
    element: HeckeElement
    cap: int

    def table(self, ui: Component | None = None) -> dict[Monomial, dict[Monomial, Fraction]]:
        return {m: self.rep.apply_to_monomial(self.element, m) for m in self.rep.monomials(self.cap, ui)}

    def first_nonzero(self, ui: Component | None = None) -> Optional[Monomial]:
        """The lowest-degree monomial with nonzero image, if any."""
        for mono in self.rep.monomials(self.cap, ui):
            if self.rep.apply_to_monomial(self.element, mono):
                return mono
        return None

    def is_zero(self, ui: Component | None = None) -> bool:
        return self.first_nonzero(ui) is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedOperator):
            return NotImplemented
        return TruncatedOperator(self.rep, self.element - other.element, min(self.cap, other.cap)).is_zero()

    __hash__ = None


@dataclass(frozen=True)
class RelationInstance:
    name: str
    component: Optional[tuple]
    indices: tuple
    lhs: HeckeElement
    rhs: HeckeElement

    def difference(self) -> HeckeElement:
        return self.lhs - self.rhs

    def label(self) -> str:
        where = f" at e({','.join(self.component)})" if self.component else ""
        return f"{self.name}{list(self.indices) if self.indices else ''}{where}"


def _skew_word(poly: SkewBivarPoly, u_gen: Gen, v_gen: Gen, tail: GenWord) -> HeckeElement:
    """poly(u, v) with u, v replaced by generators, each monomial written u^a v^b."""
    return HeckeElement({(u_gen,) * a + (v_gen,) * b + tail: c for (a, b), c in poly.coeffs.items()})


def braid_rhs(datum: RootDatum, ui: Component, r: int, overall: int = 1) -> HeckeElement:
    """
    The right side of the braid relation (tau_r tau_r+1 tau_r - tau_r+1 tau_r tau_r+1) e(i),
    scaled by overall (the braid sign of the conventions).
    """
    i, j, k = ui[r - 1], ui[r], ui[r + 1]
    if i != k or i == j:
        return HeckeElement()
    q = datum.q_poly(i, j)
    tail = (e(ui),)
    out: dict[GenWord, Fraction] = {}
    if not datum.p(i):
        for (a, b), c in q.coeffs.items():
            for m in range(a):
                word = (y(r + 2),) * m + (y(r),) * (a - 1 - m) + (y(r + 1),) * b + tail
                out[word] = out.get(word, 0) + overall * c
        return HeckeElement(out)
    sign = overall * (-1 if datum.p(j) else 1)
    for (a, b), c in q.coeffs.items():
        if a % 2:
            raise ValueError(f"Q_{i},{j} has an odd power of u at an odd node")
        alpha = a // 2
        for m in range(alpha):
            body = (y(r + 2),) * (2 * m) + (y(r),) * (2 * (alpha - 1 - m)) + (y(r + 1),) * b + tail
            for lead, s in ((y(r + 2), 1), (y(r), -1)):
                word = (lead,) + body
                out[word] = out.get(word, 0) + sign * s * c
    return HeckeElement(out)


def relation_instances(datum: RootDatum, weight: Weight, braid_sign: int = 1) -> list[RelationInstance]:
    """Every instance of the defining relations of H(nu), each as lhs = rhs; braid_sign scales the braid right sides."""
    comps = enumerate_sequences(datum, weight)
    n = weight.height
    E = HeckeElement.word
    out: list[RelationInstance] = []
    for ui in comps:
        for uj in comps:
            rhs = E(e(ui)) if ui == uj else HeckeElement()
            out.append(RelationInstance("idempotent", ui, (), E(e(ui), e(uj)), rhs))
    total = HeckeElement()
    for ui in comps:
        total = total + E(e(ui))
    out.append(RelationInstance("unit", None, (), total, HeckeElement.one()))
    for ui in comps:
        p = [datum.p(i) for i in ui]
        for r in range(1, n + 1):
            out.append(RelationInstance("y-idempotent", ui, (r,), E(y(r), e(ui)), E(e(ui), y(r))))
        for r in range(1, n):
            out.append(
                RelationInstance("tau-idempotent", ui, (r,), E(tau(r), e(ui)), E(e(perms.swap(ui, r)), tau(r)))
            )
        for r, s in combinations(range(1, n + 1), 2):
            sign = -1 if p[r - 1] * p[s - 1] else 1
            out.append(
                RelationInstance("y-commute", ui, (r, s), E(y(r), y(s), e(ui)), E(y(s), y(r), e(ui), coeff=sign))
            )
        for r in range(1, n):
            pr = p[r - 1] * p[r]
            for s in range(1, n + 1):
                if s in (r, r + 1):
                    continue
                sign = -1 if pr * p[s - 1] else 1
                out.append(
                    RelationInstance("tau-y", ui, (r, s), E(tau(r), y(s), e(ui)), E(y(s), tau(r), e(ui), coeff=sign))
                )
            for s in range(r + 2, n):
                sign = -1 if pr * p[s - 1] * p[s] else 1
                out.append(
                    RelationInstance(
                        "tau-tau", ui, (r, s), E(tau(r), tau(s), e(ui)), E(tau(s), tau(r), e(ui), coeff=sign)
                    )
                )
            sign = -1 if pr else 1
            equal = ui[r - 1] == ui[r]
            rhs8 = E(y(r), tau(r), e(ui), coeff=sign) + (E(e(ui)) if equal else HeckeElement())
            out.append(RelationInstance("tau-y-next", ui, (r,), E(tau(r), y(r + 1), e(ui)), rhs8))
            rhs9 = E(tau(r), y(r), e(ui), coeff=sign) + (E(e(ui)) if equal else HeckeElement())
            out.append(RelationInstance("y-next-tau", ui, (r,), E(y(r + 1), tau(r), e(ui)), rhs9))
            q = datum.q_poly(ui[r - 1], ui[r])
            out.append(
                RelationInstance(
                    "quadratic", ui, (r,), E(tau(r), tau(r), e(ui)), _skew_word(q, y(r), y(r + 1), (e(ui),))
                )
            )
        for r in range(1, n - 1):
            lhs = E(tau(r), tau(r + 1), tau(r), e(ui)) - E(tau(r + 1), tau(r), tau(r + 1), e(ui))
            out.append(RelationInstance("braid", ui, (r,), lhs, braid_rhs(datum, ui, r, braid_sign)))
    return out


def verify_relations(
    rep: PolynomialRepresentation, cap: int, strict: bool = False, exact: bool = False
) -> dict:
    """
    Check every relation instance on the monomials of degree at most cap.

    Args:
        rep: the representation.
        cap: the degree cap D.
        strict: raise RelationFailure on the first failing instance instead of reporting.
        exact: also test on the module generators over the symmetric polynomials.

    Returns:
        {"datum", "weight", "D", "checked", "failures"}.
    """
    logger.info(f"Verifying relations of {rep.datum.name} at {rep.weight} with D={cap}")
    checked = 0
    failures = []
    for inst in relation_instances(rep.datum, rep.weight, rep.conventions.braid_sign):
        diff = inst.difference()
        # words end in e(component), so other components are killed
        monos = rep.monomials(cap, inst.component if inst.name != "idempotent" else None)
        if exact:
            seen = set(monos)
            gens = rep.module_generators(inst.component if inst.name != "idempotent" else None)
            monos = monos + [m for m in gens if m not in seen]
        for mono in monos:
            checked += 1
            image = rep.apply_to_monomial(diff, mono)
            if image:
                logger.error(f"Relation {inst.label()} fails on {format_monomial(mono)}")
                if strict:
                    raise RelationFailure(inst.label(), inst.component, mono)
                failures.append(
                    {
                        "relation": inst.label(),
                        "monomial": format_monomial(mono),
                        "degree": rep.degree(mono),
                        "image": PolyVector(image).to_json(),
                    }
                )
                break
    return {
        "datum": rep.datum.name,
        "weight": rep.weight.to_json(),
        "D": cap,
        "checked": checked,
        "failures": failures,
    }


def grading_check(rep: PolynomialRepresentation, cap: int) -> dict:
    """Every generator acts homogeneously with its declared degree and parity, component offsets included."""
    failures = []
    for mono in rep.monomials(cap):
        ui = mono[0]
        start_degree, start_parity = rep.bidegree(mono)
        gens = [(y(r), e(ui)) for r in range(1, rep.n + 1)] + [(tau(r), e(ui)) for r in range(1, rep.n)]
        for gen, idem in gens:
            degree, parity = rep.word_bidegree((gen, idem))
            for image in rep.act_on_monomial(gen, mono):
                if rep.bidegree(image) != (start_degree + degree, (start_parity + parity) % 2):
                    failures.append({"generator": format_gen(gen), "monomial": format_monomial(mono)})
                    break
    return {"datum": rep.datum.name, "weight": rep.weight.to_json(), "D": cap, "failures": failures}


def idempotent_check(rep: PolynomialRepresentation, cap: int) -> bool:
    """The e(i) act as orthogonal idempotents summing to the identity."""
    for mono in rep.monomials(cap):
        total: dict[Monomial, Fraction] = {}
        for ui in rep.components:
            once = rep.act_on_monomial(e(ui), mono)
            total = _add(total, once)
            for uj in rep.components:
                twice = rep.apply_word((e(uj), e(ui)), {mono: Fraction(1)})
                if twice != (once if ui == uj else {}):
                    return False
        if total != {mono: Fraction(1)}:
            return False
    return True


def pbw_coordinates(
    rep: PolynomialRepresentation, x: HeckeElement, test: Sequence[Monomial] | None = None
) -> dict[BasisElement, Fraction]:
    """
    Coordinates of x in the PBW basis, by matching actions on the module generators.

    Raises:
        NotInSpan: when the action of x is not a combination of basis actions.
    """
    x = rep.with_idempotents(x)
    groups: dict[tuple, HeckeElement] = {}
    for word, c in x.terms.items():
        degree, _ = rep.word_bidegree(word)
        key = (word[-1][1], degree)
        groups[key] = groups.get(key, HeckeElement()) + HeckeElement({word: c})
    out: dict[BasisElement, Fraction] = {}
    for (ui, degree), part in sorted(groups.items()):
        monos = test if test is not None else rep.module_generators(ui)
        monos = [m for m in monos if m[0] == ui]
        candidates = rep.basis_elements(degree, degree, ui)
        vectors = [rep.action_vector(HeckeElement.word(*b.word()), monos) for b in candidates]
        target = rep.action_vector(part, monos)
        try:
            coeffs = solve_in_span(vectors, target)
        except NotInSpan:
            logger.error(f"{part} is not in the span of {len(candidates)} basis elements of degree {degree}")
            raise
        for b, c in zip(candidates, coeffs):
            if c:
                out[b] = out.get(b, 0) + c
    return {b: c for b, c in sorted(out.items()) if c}


def pbw_independence(rep: PolynomialRepresentation, low: int, high: int) -> dict:
    """The basis elements with degree in [low, high] act linearly independently."""
    checked = 0
    failures = []
    for ui in rep.components:
        monos = rep.module_generators(ui)
        by_degree: dict[int, list[BasisElement]] = {}
        for b in rep.basis_elements(low, high, ui):
            by_degree.setdefault(rep.basis_degree(b), []).append(b)
        for degree, elements in sorted(by_degree.items()):
            vectors = [rep.action_vector(HeckeElement.word(*b.word()), monos) for b in elements]
            rank = sparse_rank(vectors)
            checked += len(elements)
            if rank != len(elements):
                failures.append({"component": list(ui), "degree": degree, "count": len(elements), "rank": rank})
    return {
        "datum": rep.datum.name,
        "weight": rep.weight.to_json(),
        "window": [low, high],
        "checked": checked,
        "failures": failures,
    }


def reduced_word_dependence(rep: PolynomialRepresentation, ui: Iterable[str], word: Sequence[int]) -> dict:
    """
    Expand tau_k1 ... tau_kt e(i) for a reduced word of w in the PBW basis: the
    canonical tau_w e(i) appears with coefficient +-1 and every other term is tau_u f(y) e(i) with u < w.
    """
    ui = tuple(ui)
    if not perms.is_reduced(rep.n, word):
        raise ValueError(f"{list(word)} is not a reduced word")
    w = perms.from_word(rep.n, word)
    x = HeckeElement.word(*[tau(k) for k in word], e(ui))
    coords = pbw_coordinates(rep, x)
    lead = coords.get(BasisElement(w, (0,) * rep.n, ui), Fraction(0))
    others = [b for b in coords if b != BasisElement(w, (0,) * rep.n, ui)]
    below = all(perms.bruhat_lt(b.w, w) for b in others)
    return {
        "word": list(word),
        "canonical": list(perms.reduced_word(w)),
        "lead": str(lead),
        "lower_terms": [[b.label(), str(coords[b])] for b in others],
        "passed": abs(lead) == 1 and below,
    }


def apply_psi(x: HeckeElement) -> HeckeElement:
    """The anti-automorphism fixing every generator: words are reversed."""
    return HeckeElement({tuple(reversed(w)): c for w, c in x.terms.items()})


def apply_phi(rep: PolynomialRepresentation, x: HeckeElement) -> HeckeElement:
    """
    The automorphism with e(i) -> e(w0 i), y_r -> y_n-r+1 and
    tau_r e(i) -> (-1)^(1 + p(i_r)p(i_r+1)) tau_n-r e(w0 i).
    """
    n = rep.n
    constant = rep.conventions.phi_exponent == "constant"
    out: dict[GenWord, Fraction] = {}
    for word, c in rep.with_idempotents(x).terms.items():
        comp = word[-1][1]
        sign = 1
        image = []
        for kind, arg in reversed(word):
            if kind == "e":
                image.append(e(tuple(reversed(arg))))
            elif kind == "y":
                image.append(y(n - arg + 1))
            else:
                exponent = 1 + (0 if constant else rep.datum.p(comp[arg - 1]) * rep.datum.p(comp[arg]))
                sign *= -1 if exponent % 2 else 1
                image.append(tau(n - arg))
                comp = perms.swap(comp, arg)
        key = tuple(reversed(image))
        out[key] = out.get(key, 0) + sign * c
    return HeckeElement(out)


def _relation_map_check(rep: PolynomialRepresentation, cap: int, mapping, name: str) -> dict:
    failures = []
    checked = 0
    for inst in relation_instances(rep.datum, rep.weight, rep.conventions.braid_sign):
        image = mapping(inst.difference())
        checked += 1
        witness = TruncatedOperator(rep, image, cap).first_nonzero()
        if witness is not None:
            logger.error(f"{name} does not preserve {inst.label()}: witness {format_monomial(witness)}")
            failures.append({"relation": inst.label(), "monomial": format_monomial(witness)})
    return {"datum": rep.datum.name, "weight": rep.weight.to_json(), "D": cap, "checked": checked, "failures": failures}


def phi_check(rep: PolynomialRepresentation, cap: int) -> dict:
    """phi sends every relation to a relation, and phi o phi = id on generator words."""
    report = _relation_map_check(rep, cap, lambda x: apply_phi(rep, x), "phi")
    involution = True
    for ui in rep.components:
        for r in range(1, rep.n):
            x = HeckeElement.word(tau(r), e(ui))
            involution &= apply_phi(rep, apply_phi(rep, x)) == x
        for r in range(1, rep.n + 1):
            x = HeckeElement.word(y(r), e(ui))
            involution &= apply_phi(rep, apply_phi(rep, x)) == x
    report["involution"] = involution
    return report


def psi_check(rep: PolynomialRepresentation, cap: int) -> dict:
    return _relation_map_check(rep, cap, apply_psi, "psi")


def random_word(rep: PolynomialRepresentation, rng: random.Random, length: int) -> HeckeElement:
    gens: list[Gen] = []
    for _ in range(length):
        kind = rng.choice("yt" if rep.n > 1 else "y")
        gens.append(y(rng.randint(1, rep.n)) if kind == "y" else tau(rng.randint(1, rep.n - 1)))
    gens.append(e(rng.choice(rep.components)))
    return HeckeElement.word(*gens)


def psi_involution_check(rep: PolynomialRepresentation, rng: random.Random, samples: int = 10, cap: int = 6) -> bool:
    """psi o psi = id, and psi(xy) acts as psi(y) psi(x), on seeded random words."""
    for _ in range(samples):
        x = random_word(rep, rng, rng.randint(0, 3))
        z = random_word(rep, rng, rng.randint(0, 3))
        if apply_psi(apply_psi(x)) != x:
            return False
        left = TruncatedOperator(rep, apply_psi(x * z), cap)
        right = TruncatedOperator(rep, apply_psi(z) * apply_psi(x), cap)
        if left != right:
            return False
    return True


def elementary_symmetric(rep: PolynomialRepresentation, k: int) -> HeckeElement:
    """sum over i of e_k(z_1, ..., z_n) e(i) with z_r = y_r^(1 + p(i_r))."""
    out: dict[GenWord, Fraction] = {}
    for ui in rep.components:
        for subset in combinations(range(1, rep.n + 1), k):
            word: list[Gen] = []
            for r in subset:
                word.extend([y(r)] * (1 + rep.datum.p(ui[r - 1])))
            key = tuple(word) + (e(ui),)
            out[key] = out.get(key, 0) + 1
    return HeckeElement(out)


def center_check(rep: PolynomialRepresentation, cap: int) -> dict:
    """Each e_k(z) commutes with every generator as an operator up to degree cap."""
    gens: list[Gen] = [e(ui) for ui in rep.components]
    gens += [y(r) for r in range(1, rep.n + 1)] + [tau(r) for r in range(1, rep.n)]
    failures = []
    for k in range(1, rep.n + 1):
        z = elementary_symmetric(rep, k)
        for gen in gens:
            g = HeckeElement.word(gen)
            witness = TruncatedOperator(rep, g * z - z * g, cap).first_nonzero()
            if witness is not None:
                failures.append({"k": k, "generator": format_gen(gen), "monomial": format_monomial(witness)})
    return {"datum": rep.datum.name, "weight": rep.weight.to_json(), "D": cap, "failures": failures}
