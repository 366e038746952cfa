"""
Root data: quivers with compatible automorphism, the Z2-graded Cartan datum they
determine, and the skew polynomial matrices Q and P built from it.
"""

from __future__ import annotations

import json
import logging
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np
from sympy.utilities.iterables import multiset_permutations

logger = logging.getLogger(__name__)

FIXTURE_PACKAGE = "spinhecke.fixtures"


class RootDatumError(ValueError):
    """Base class for invalid root data."""

    condition = "root datum"


class IncompatibleAutomorphism(RootDatumError):
    condition = "compatible automorphism"


class C4Violation(RootDatumError):
    condition = "C4"


class C6Violation(RootDatumError):
    condition = "C6"


class GcdNotOne(RootDatumError):
    condition = "gcd"


class UnknownFixture(RootDatumError):
    condition = "fixture"


class WeightError(RootDatumError):
    condition = "weight"


def vertex_key(vertex: str):
    """Natural ordering on vertex ids: numeric ids by value, then names."""
    return (0, int(vertex), "") if vertex.lstrip("-").isdigit() else (1, 0, vertex)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> Quiver:
        verts = tuple(str(v) for v in vertices)
        arrows = tuple((str(s), str(t)) for s, t in edges)
        known = set(verts)
        for s, t in arrows:
            if s not in known or t not in known:
                raise RootDatumError(f"Edge ({s}, {t}) mentions an unknown vertex")
        return cls(verts, arrows)

    def components(self) -> list[frozenset[str]]:
        neighbours = defaultdict(set)
        for s, t in self.edges:
            neighbours[s].add(t)
            neighbours[t].add(s)
        seen: set[str] = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(neighbours[x] - comp)
            seen |= comp
            out.append(frozenset(comp))
        return out


@dataclass(frozen=True)
class Automorphism:
    perm: Mapping[str, str]

    @classmethod
    def build(cls, quiver: Quiver, mapping: Mapping | None) -> Automorphism:
        perm = {v: v for v in quiver.vertices}
        for src, dst in (mapping or {}).items():
            perm[str(src)] = str(dst)
        return cls(perm)

    def __call__(self, vertex: str) -> str:
        return self.perm[vertex]

    def orbit(self, vertex: str) -> tuple[str, ...]:
        out = [vertex]
        nxt = self.perm[vertex]
        while nxt != vertex:
            out.append(nxt)
            nxt = self.perm[nxt]
        return tuple(sorted(out, key=vertex_key))

    def orbits(self, vertices: Iterable[str]) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for v in sorted(vertices, key=vertex_key):
            if v not in seen:
                orb = self.orbit(v)
                seen |= set(orb)
                out.append(orb)
        return out

    def validate(self, quiver: Quiver) -> None:
        """Raise IncompatibleAutomorphism unless this is a compatible quiver automorphism."""
        verts = set(quiver.vertices)
        if set(self.perm) != verts or set(self.perm.values()) != verts:
            raise IncompatibleAutomorphism("Automorphism is not a bijection on the vertex set")
        edges = Counter(quiver.edges)
        image = Counter((self(s), self(t)) for s, t in quiver.edges)
        if edges != image:
            raise IncompatibleAutomorphism("Automorphism does not permute the edges (s(a(h)) = a(s(h)) fails)")
        for s, t in quiver.edges:
            if t in self.orbit(s):
                raise IncompatibleAutomorphism(f"Edge ({s}, {t}) joins two vertices of one orbit")
        for comp in quiver.components():
            if {self(v) for v in comp} != set(comp):
                raise IncompatibleAutomorphism(
                    f"Automorphism does not restrict to the component {sorted(comp, key=vertex_key)}"
                )

    def edge_orbits(self, quiver: Quiver) -> list[list[tuple[str, str]]]:
        """Orbits on the edge multiset; the k-th copy of an edge maps to the k-th copy of its image."""
        copies: dict[tuple[str, str], int] = Counter()
        labelled = []
        for edge in quiver.edges:
            labelled.append((edge, copies[edge]))
            copies[edge] += 1
        seen = set()
        out = []
        for item in labelled:
            if item in seen:
                continue
            orbit = []
            cur = item
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur[0])
                (s, t), k = cur
                cur = ((self(s), self(t)), k)
            out.append(orbit)
        return out


@dataclass(frozen=True)
class SkewBivarPoly:
    """
    Element of k{u, v} = k<u, v>/(uv - (-1)^(p(i)p(j)) vu), stored on normal-form
    monomials u^a v^b.
    """

    pi: int
    pj: int
    coeffs: Mapping[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def build(cls, pi: int, pj: int, coeffs: Mapping[tuple[int, int], int]) -> SkewBivarPoly:
        return cls(pi, pj, {k: c for k, c in coeffs.items() if c != 0})

    @classmethod
    def u(cls, pi: int, pj: int, power: int = 1) -> SkewBivarPoly:
        return cls.build(pi, pj, {(power, 0): 1})

    @classmethod
    def v(cls, pi: int, pj: int, power: int = 1) -> SkewBivarPoly:
        return cls.build(pi, pj, {(0, power): 1})

    @classmethod
    def constant(cls, pi: int, pj: int, value: int) -> SkewBivarPoly:
        return cls.build(pi, pj, {(0, 0): value})

    @property
    def epsilon(self) -> int:
        return self.pi * self.pj

    def _same_ring(self, other: SkewBivarPoly) -> None:
        if (self.pi, self.pj) != (other.pi, other.pj):
            raise ValueError("Skew polynomials from different rings")

    def __add__(self, other: SkewBivarPoly) -> SkewBivarPoly:
        self._same_ring(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return SkewBivarPoly.build(self.pi, self.pj, out)

    def __neg__(self) -> SkewBivarPoly:
        return SkewBivarPoly.build(self.pi, self.pj, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: SkewBivarPoly) -> SkewBivarPoly:
        return self + (-other)

    def __mul__(self, other) -> SkewBivarPoly:
        if isinstance(other, int):
            return SkewBivarPoly.build(self.pi, self.pj, {k: c * other for k, c in self.coeffs.items()})
        self._same_ring(other)
        out: dict[tuple[int, int], int] = {}
        for (a, b), c1 in self.coeffs.items():
            for (c, d), c2 in other.coeffs.items():
                # v^b u^c = (-1)^(bc eps) u^c v^b
                sign = -1 if (b * c * self.epsilon) % 2 else 1
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + sign * c1 * c2
        return SkewBivarPoly.build(self.pi, self.pj, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SkewBivarPoly:
        result = SkewBivarPoly.constant(self.pi, self.pj, 1)
        for _ in range(n):
            result = result * self
        return result

    def negate_u(self) -> SkewBivarPoly:
        """Q(-u, v)."""
        return SkewBivarPoly.build(self.pi, self.pj, {(a, b): c * (-1) ** a for (a, b), c in self.coeffs.items()})

    def swapped(self) -> SkewBivarPoly:
        """Read a polynomial of k_ji{u', v'} in k_ij{u, v} via u' = v, v' = u."""
        out = {}
        for (a, b), c in self.coeffs.items():
            sign = -1 if (a * b * self.epsilon) % 2 else 1
            out[(b, a)] = sign * c
        return SkewBivarPoly.build(self.pj, self.pi, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewBivarPoly):
            return NotImplemented
        return (self.pi, self.pj) == (other.pi, other.pj) and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.pi, self.pj, frozenset(self.coeffs.items())))

    def to_json(self) -> list:
        return [[a, b, c] for (a, b), c in self.terms()]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b), c in self.terms():
            mono = "*".join(x for x in (f"u^{a}" if a else "", f"v^{b}" if b else "") if x) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Weight:
    """An element of Q+ as multiplicities per node, in node order."""

    counts: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, datum: RootDatum, counts: Mapping[str, int]) -> Weight:
        for node, n in counts.items():
            if node not in datum.index:
                raise WeightError(f"Unknown node {node!r}; nodes are {list(datum.nodes)}")
            if n < 0:
                raise WeightError(f"Negative multiplicity {n} for node {node!r}")
        return cls(tuple((node, int(counts.get(node, 0))) for node in datum.nodes if counts.get(node, 0)))

    @classmethod
    def parse(cls, spec: str, datum: RootDatum) -> Weight:
        """Parse 'i:2,j:1'."""
        counts: dict[str, int] = {}
        for part in filter(None, (p.strip() for p in spec.split(","))):
            node, sep, mult = part.partition(":")
            if not sep:
                node, mult = part, "1"
            try:
                counts[node.strip()] = counts.get(node.strip(), 0) + int(mult)
            except ValueError as exc:
                raise WeightError(f"Bad multiplicity in weight spec {spec!r}") from exc
        return cls.of(datum, counts)

    @classmethod
    def of_sequence(cls, datum: RootDatum, seq: Iterable[str]) -> Weight:
        return cls.of(datum, Counter(seq))

    def n(self, node: str) -> int:
        return dict(self.counts).get(node, 0)

    @property
    def height(self) -> int:
        return sum(n for _, n in self.counts)

    def to_json(self) -> dict:
        return dict(self.counts)

    def __str__(self) -> str:
        return ",".join(f"{node}:{n}" for node, n in self.counts)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Z2-graded Cartan datum derived from a quiver with compatible automorphism."""

    name: str
    nodes: tuple[str, ...]
    orbits: Mapping[str, tuple[str, ...]]
    parity: Mapping[str, int]
    symmetrizer: Mapping[str, int]
    pairing: np.ndarray
    d_matrix: np.ndarray
    quiver: Quiver
    automorphism: Automorphism

    @cached_property
    def index(self) -> dict[str, int]:
        return {node: k for k, node in enumerate(self.nodes)}

    def p(self, i: str) -> int:
        return self.parity[i]

    def s(self, i: str) -> int:
        return self.symmetrizer[i]

    def pair(self, i: str, j: str) -> int:
        return int(self.pairing[self.index[i], self.index[j]])

    def a(self, i: str, j: str) -> int:
        return self.pair(i, j) // self.s(i)

    def d(self, i: str, j: str) -> int:
        return int(self.d_matrix[self.index[i], self.index[j]])

    def m(self, i: str, j: str) -> int:
        return 2 * self.s(i) * self.s(j) // gcd(self.s(i), self.s(j))

    @cached_property
    def cartan(self) -> np.ndarray:
        s = np.array([self.s(i) for i in self.nodes], dtype=int)
        return self.pairing // s[:, None]

    @property
    def odd_nodes(self) -> tuple[str, ...]:
        return tuple(i for i in self.nodes if self.p(i))

    @property
    def even_nodes(self) -> tuple[str, ...]:
        return tuple(i for i in self.nodes if not self.p(i))

    def less(self, i: str, j: str) -> bool:
        return self.index[i] < self.index[j]

    def pair_weights(self, left: Weight, right: Weight) -> int:
        return sum(m * n * self.pair(i, j) for i, m in left.counts for j, n in right.counts)

    def add_weights(self, left: Weight, right: Weight) -> Weight:
        counts = Counter(dict(left.counts))
        counts.update(dict(right.counts))
        return Weight.of(self, counts)

    def weight_parity(self, weight: Weight) -> int:
        return sum(n * self.p(i) for i, n in weight.counts) % 2

    @cached_property
    def _q_cache(self) -> dict:
        return {}

    def q_poly(self, i: str, j: str) -> SkewBivarPoly:
        key = (i, j)
        if key not in self._q_cache:
            self._q_cache[key] = self._build_q(i, j)
        return self._q_cache[key]

    def _build_q(self, i: str, j: str) -> SkewBivarPoly:
        pi, pj = self.p(i), self.p(j)
        if i == j:
            return SkewBivarPoly.build(pi, pj, {})
        m = self.m(i, j)
        outer = -2 * self.pair(i, j) // m
        base = SkewBivarPoly.u(pi, pj, m // (2 * self.s(i))) - SkewBivarPoly.v(pi, pj, m // (2 * self.s(j)))
        return (base**outer) * ((-1) ** self.d(i, j))

    def p_poly(self, i: str, j: str) -> SkewBivarPoly:
        if i == j:
            return SkewBivarPoly.build(self.p(i), self.p(j), {})
        if self.less(i, j):
            return self.q_poly(i, j)
        return SkewBivarPoly.constant(self.p(i), self.p(j), 1)

    def q_matrix(self) -> list[list[SkewBivarPoly]]:
        return [[self.q_poly(i, j) for j in self.nodes] for i in self.nodes]

    def p_matrix(self) -> list[list[SkewBivarPoly]]:
        return [[self.p_poly(i, j) for j in self.nodes] for i in self.nodes]

    def parse_word(self, text: str) -> tuple[str, ...]:
        """'i,j,i' or, when every node name is one character, 'iji'."""
        if "," in text or " " in text:
            parts = [p for p in text.replace(" ", ",").split(",") if p]
        elif text in self.index:
            parts = [text]
        else:
            parts = list(text)
        for part in parts:
            if part not in self.index:
                raise WeightError(f"Unknown node {part!r} in word {text!r}")
        return tuple(parts)

    def sub_datum(self, i: str, j: str) -> RootDatum:
        """The rank-2 restriction to nodes i and j."""
        keep = [self.index[i], self.index[j]]
        return RootDatum(
            name=f"{self.name}[{i},{j}]",
            nodes=(i, j),
            orbits={i: self.orbits[i], j: self.orbits[j]},
            parity={i: self.p(i), j: self.p(j)},
            symmetrizer={i: self.s(i), j: self.s(j)},
            pairing=self.pairing[np.ix_(keep, keep)],
            d_matrix=self.d_matrix[np.ix_(keep, keep)],
            quiver=self.quiver,
            automorphism=self.automorphism,
        )

    def rank_two_pairs(self) -> list[tuple[str, str]]:
        return [(i, j) for i in self.nodes for j in self.nodes if i != j]

    def check_conditions(self) -> list[str]:
        """Names of the violated conditions among C1-C6, the gcd condition and d_ij + d_ji."""
        failures = []
        a = self.cartan
        n = len(self.nodes)
        if any(a[k, k] != 2 for k in range(n)):
            failures.append("C1")
        if any(a[k, l] > 0 for k in range(n) for l in range(n) if k != l):
            failures.append("C2")
        if any((a[k, l] == 0) != (a[l, k] == 0) for k in range(n) for l in range(n)):
            failures.append("C3")
        if any(a[k, l] % 2 for k, i in enumerate(self.nodes) if self.p(i) for l in range(n)):
            failures.append("C4")
        sym = np.diag([self.s(i) for i in self.nodes]) @ a
        if not np.array_equal(sym, sym.T) or any(a[k, l] * self.s(i) != self.pair(i, j)
                                                 for k, i in enumerate(self.nodes)
                                                 for l, j in enumerate(self.nodes)):
            failures.append("C5")
        if not self.odd_nodes or any((self.s(i) % 2) != self.p(i) for i in self.nodes):
            failures.append("C6")
        g = 0
        for i in self.nodes:
            g = gcd(g, self.s(i))
        if g != 1:
            failures.append("gcd")
        for i in self.nodes:
            for j in self.nodes:
                if i != j and self.d(i, j) + self.d(j, i) != -2 * self.pair(i, j) // self.m(i, j):
                    failures.append("dij+dji")
                    return failures
        return failures

    def check_q_conditions(self) -> list[str]:
        """Violated clauses (a)-(d) of the Q-matrix properties, as 'clause:i,j'."""
        failures = []
        for i in self.nodes:
            for j in self.nodes:
                q = self.q_poly(i, j)
                if any(a < 0 or b < 0 or not isinstance(c, (int, np.integer)) for (a, b), c in q.coeffs.items()):
                    failures.append(f"a:{i},{j}")
                if i == j and not q.is_zero():
                    failures.append(f"b:{i},{j}")
                if q != self.q_poly(j, i).swapped():
                    failures.append(f"c:{i},{j}")
                if self.p(i) and q.negate_u() != q:
                    failures.append(f"d:{i},{j}")
        return failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": list(self.nodes),
            "parity": {i: self.p(i) for i in self.nodes},
            "s": {i: self.s(i) for i in self.nodes},
            "pairing": self.pairing.tolist(),
            "cartan": self.cartan.tolist(),
            "d": self.d_matrix.tolist(),
            "Q": {f"{i},{j}": self.q_poly(i, j).to_json() for i in self.nodes for j in self.nodes if i != j},
        }


def derive_root_datum(
    quiver: Quiver,
    automorphism: Automorphism,
    parity: Mapping[str, int],
    order: Iterable[str] | None = None,
    name: str = "datum",
    strict: bool = True,
) -> RootDatum:
    """
    Build the Cartan datum of a quiver with compatible automorphism.

    Args:
        quiver: the quiver.
        automorphism: a compatible automorphism of it.
        parity: parity bit per orbit representative (the smallest vertex id of the orbit).
        order: total order on the representatives; defaults to the order of the orbits.
        name: label carried into reports.
        strict: raise on violated conditions; when False the datum is built anyway.

    Returns:
        The validated RootDatum.
    """
    if strict:
        automorphism.validate(quiver)
    orbits = {orb[0]: orb for orb in automorphism.orbits(quiver.vertices)}
    nodes = tuple(str(x) for x in order) if order is not None else tuple(orbits)
    if sorted(nodes, key=vertex_key) != sorted(orbits, key=vertex_key):
        raise RootDatumError(f"Order {list(nodes)} does not list the orbit representatives {list(orbits)}")
    missing = [i for i in nodes if i not in parity]
    if missing:
        raise RootDatumError(f"No parity given for nodes {missing}")
    owner = {v: rep for rep, orb in orbits.items() for v in orb}
    idx = {node: k for k, node in enumerate(nodes)}
    n = len(nodes)
    pairing = np.zeros((n, n), dtype=int)
    for k, i in enumerate(nodes):
        pairing[k, k] = 2 * len(orbits[i])
    for s, t in quiver.edges:
        a, b = idx[owner[s]], idx[owner[t]]
        if a != b:
            pairing[a, b] -= 1
            pairing[b, a] -= 1
    d_matrix = np.zeros((n, n), dtype=int)
    for edge_orbit in automorphism.edge_orbits(quiver):
        s, t = edge_orbit[0]
        a, b = idx[owner[s]], idx[owner[t]]
        if a != b:
            d_matrix[a, b] += 1
    datum = RootDatum(
        name=name,
        nodes=nodes,
        orbits={i: orbits[i] for i in nodes},
        parity={i: int(parity[i]) for i in nodes},
        symmetrizer={i: len(orbits[i]) for i in nodes},
        pairing=pairing,
        d_matrix=d_matrix,
        quiver=quiver,
        automorphism=automorphism,
    )
    failures = datum.check_conditions()
    if failures:
        logger.info(f"Datum {name} violates {failures}")
    if strict:
        if "C4" in failures:
            raise C4Violation(f"{name}: a_ij must be even for odd i (C4)")
        if "C6" in failures:
            raise C6Violation(f"{name}: s_i must be odd exactly at odd nodes (C6)")
        if "gcd" in failures:
            raise GcdNotOne(f"{name}: gcd of the symmetrizers is not 1")
        if failures:
            raise RootDatumError(f"{name}: violated conditions {failures}")
    return datum


def datum_from_json(doc: Mapping, strict: bool | None = None) -> RootDatum:
    """Build a datum from the JSON quiver document."""
    try:
        quiver = Quiver.build(doc["vertices"], doc.get("edges", []))
        automorphism = Automorphism.build(quiver, doc.get("automorphism"))
        parity = {str(k): int(v) for k, v in doc["parity"].items()}
    except KeyError as exc:
        raise RootDatumError(f"Quiver document is missing the key {exc}") from exc
    if strict is None:
        strict = bool(doc.get("strict", True))
    return derive_root_datum(
        quiver, automorphism, parity, order=doc.get("order"), name=doc.get("name", "datum"), strict=strict
    )


def load_datum(path: str | Path, strict: bool | None = None) -> RootDatum:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        logger.error(f"Cannot read quiver document {path}: {exc}")
        raise RootDatumError(f"Cannot read quiver document {path}") from exc
    doc.setdefault("name", path.stem)
    return datum_from_json(doc, strict=strict)


def list_fixtures() -> list[str]:
    files = resources.files(FIXTURE_PACKAGE)
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def fixture_document(name: str) -> dict:
    resource = resources.files(FIXTURE_PACKAGE).joinpath(f"{name}.json")
    if not resource.is_file():
        raise UnknownFixture(f"Unknown builtin {name!r}; available: {', '.join(list_fixtures())}")
    return json.loads(resource.read_text())


def builtin_datum(name: str, strict: bool | None = None) -> RootDatum:
    return datum_from_json(fixture_document(name), strict=strict)


def valid_fixtures() -> list[str]:
    """Built-in data that satisfy every condition."""
    return [name for name in list_fixtures() if fixture_document(name).get("strict", True)]


def enumerate_sequences(datum: RootDatum, weight: Weight) -> list[tuple[str, ...]]:
    """All of I^nu in lexicographic order with respect to the node order."""
    letters = []
    for node, n in weight.counts:
        letters.extend([datum.index[node]] * n)
    if not letters:
        return [()]
    return [tuple(datum.nodes[k] for k in perm) for perm in multiset_permutations(sorted(letters))]


def weights_up_to_height(datum: RootDatum, height: int) -> list[Weight]:
    out = []

    def extend(k: int, remaining: int, acc: dict[str, int]):
        if k == len(datum.nodes):
            if sum(acc.values()) > 0:
                out.append(Weight.of(datum, acc))
            return
        for n in range(remaining + 1):
            extend(k + 1, remaining - n, {**acc, datum.nodes[k]: n})

    extend(0, height, {})
    return sorted(out, key=lambda w: (w.height, [-w.n(i) for i in datum.nodes]))


def random_valid_quiver(rng: random.Random, max_odd: int = 2, max_even: int = 2) -> dict:
    """
    A random quiver document satisfying every condition.

    Odd nodes are fixed vertices and even nodes are swapped pairs, so s_i is 1 or 2.
    Every swapped pair is joined to some odd vertex, which keeps each component stable.
    """
    n_odd = rng.randint(1, max_odd)
    n_even = rng.randint(0, max_even)
    odd = [f"o{k}" for k in range(n_odd)]
    pairs = [(f"e{k}a", f"e{k}b") for k in range(n_even)]
    edges: list[list[str]] = []

    def add_pair_edges(u: str, pair: tuple[str, str], outward: bool):
        for x in pair:
            edges.append([u, x] if outward else [x, u])

    for k in range(n_odd):
        for l in range(k + 1, n_odd):
            for _ in range(2 * rng.randint(0, 1)):
                edges.append([odd[k], odd[l]] if rng.random() < 0.5 else [odd[l], odd[k]])
    for pair in pairs:
        add_pair_edges(rng.choice(odd), pair, rng.random() < 0.5)
        for u in odd:
            if rng.random() < 0.25:
                add_pair_edges(u, pair, rng.random() < 0.5)
    for k in range(n_even):
        for l in range(k + 1, n_even):
            if rng.random() < 0.4:
                (xa, xb), (ya, yb) = pairs[k], pairs[l]
                if rng.random() < 0.5:
                    ya, yb = yb, ya
                edges.extend([[xa, ya], [xb, yb]])
    automorphism = {}
    for xa, xb in pairs:
        automorphism[xa], automorphism[xb] = xb, xa
    parity = {u: 1 for u in odd}
    parity.update({xa: 0 for xa, _ in pairs})
    order = odd + [xa for xa, _ in pairs]
    rng.shuffle(order)
    return {
        "name": "random",
        "vertices": odd + [x for pair in pairs for x in pair],
        "edges": edges,
        "automorphism": automorphism,
        "parity": parity,
        "order": order,
    }
