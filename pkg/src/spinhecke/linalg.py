"""
Exact linear algebra over QQ and over Q(q), on top of sympy's DomainMatrix.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .ring import FIELD, RationalFunc

logger = logging.getLogger(__name__)

FUNCTION_FIELD = FIELD.to_domain()

SparseVector = Mapping[object, Fraction]


class NotInSpan(ValueError):
    """The target vector is not a combination of the given vectors."""


def _qq(value) -> object:
    frac = Fraction(value)
    return QQ(frac.numerator, frac.denominator)


def rank_over_function_field(rows: Sequence[Sequence[RationalFunc]]) -> int:
    """Rank of a matrix with entries in Q(q), by exact elimination."""
    if not rows or not rows[0]:
        return 0
    shape = (len(rows), len(rows[0]))
    matrix = DomainMatrix([[entry.value for entry in row] for row in rows], shape, FUNCTION_FIELD)
    return matrix.rank()


def _coordinates(vectors: Sequence[SparseVector]) -> dict[object, int]:
    keys: dict[object, int] = {}
    for vec in vectors:
        for key in vec:
            if key not in keys:
                keys[key] = len(keys)
    return keys


def _sparse_matrix(vectors: Sequence[SparseVector], keys: Mapping[object, int]) -> DomainMatrix:
    """The vectors as the rows of a sparse DomainMatrix over QQ."""
    rows = {}
    for r, vec in enumerate(vectors):
        row = {keys[k]: _qq(c) for k, c in vec.items() if c}
        if row:
            rows[r] = row
    return DomainMatrix(rows, (len(vectors), max(len(keys), 1)), QQ)


def sparse_rank(vectors: Sequence[SparseVector]) -> int:
    """Rank over QQ of vectors given as {coordinate: value} maps."""
    vectors = [v for v in vectors if any(v.values())]
    if not vectors:
        return 0
    keys = _coordinates(vectors)
    return _sparse_matrix(vectors, keys).rank()


def solve_in_span(vectors: Sequence[SparseVector], target: SparseVector) -> list[Fraction]:
    """
    Coefficients c with sum_k c_k vectors[k] = target.

    Args:
        vectors: spanning vectors as sparse maps.
        target: the vector to express.

    Returns:
        One solution, with the free coefficients set to zero.

    Raises:
        NotInSpan: when no solution exists.
    """
    if not vectors:
        if any(target.values()):
            raise NotInSpan("Nonzero target and no spanning vectors")
        return []
    keys = _coordinates(list(vectors) + [target])
    n = len(vectors)
    # columns are the spanning vectors, the last column is the target
    rows: dict[int, dict[int, object]] = {}
    for k, vec in enumerate(list(vectors) + [target]):
        for key, c in vec.items():
            if c:
                rows.setdefault(keys[key], {})[k] = _qq(c)
    augmented = DomainMatrix(rows, (len(keys), n + 1), QQ)
    reduced, pivots = augmented.rref()
    if n in pivots:
        raise NotInSpan("Target is not in the span")
    solution = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        value = reduced[r, n].element
        solution[col] = Fraction(int(QQ.numer(value)), int(QQ.denom(value)))
    return solution


def independent_subset(vectors: Sequence[SparseVector]) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily from the front."""
    if not vectors:
        return []
    keys = _coordinates(vectors)
    cols: dict[int, dict[int, object]] = {}
    for k, vec in enumerate(vectors):
        for key, c in vec.items():
            if c:
                cols.setdefault(keys[key], {})[k] = _qq(c)
    matrix = DomainMatrix(cols, (max(len(keys), 1), len(vectors)), QQ)
    _, pivots = matrix.rref()
    return list(pivots)
