"""
Permutations of {1, ..., n} in one-line notation, w = (w(1), ..., w(n)), and words
in the simple transpositions s_1, ..., s_{n-1}.

A word (k_1, ..., k_t) stands for the product s_{k_1} ... s_{k_t}, composed right
to left, so s_{k_t} is applied first.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest(n: int) -> Perm:
    """w0, the order-reversing permutation."""
    return tuple(range(n, 0, -1))


def compose(x: Sequence[int], y: Sequence[int]) -> Perm:
    """xy: apply y, then x."""
    if len(x) != len(y):
        raise ValueError(f"Cannot compose permutations of different lengths {len(x)} and {len(y)}")
    return tuple(x[j - 1] for j in y)


def inverse(w: Sequence[int]) -> Perm:
    inv = [0] * len(w)
    for pos, value in enumerate(w, start=1):
        inv[value - 1] = pos
    return tuple(inv)


def length(w: Sequence[int]) -> int:
    """Number of inversions."""
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def from_word(n: int, word: Iterable[int]) -> Perm:
    """s_{k_1} ... s_{k_t} in one-line notation."""
    w = list(range(1, n + 1))
    for k in word:
        if not 1 <= k < n:
            raise ValueError(f"s_{k} is not a simple transposition of S_{n}")
        # right multiplication by s_k swaps positions k and k + 1
        w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def is_left_descent(w: Sequence[int], k: int) -> bool:
    """l(s_k w) < l(w): the value k + 1 comes before the value k."""
    return w.index(k + 1) < w.index(k)


def reduced_word(w: Sequence[int]) -> tuple[int, ...]:
    """
    The lexicographically smallest reduced word of w.

    >>> reduced_word((3, 2, 1))
    (1, 2, 1)
    """
    word = []
    current = list(w)
    n = len(current)
    while True:
        for k in range(1, n):
            if is_left_descent(current, k):
                word.append(k)
                a, b = current.index(k), current.index(k + 1)
                current[a], current[b] = k + 1, k
                break
        else:
            return tuple(word)


def reduced_words(w: Sequence[int]) -> list[tuple[int, ...]]:
    """Every reduced word of w, in lexicographic order."""
    w = tuple(w)
    if length(w) == 0:
        return [()]
    out = []
    for k in range(1, len(w)):
        if is_left_descent(w, k):
            shorter = tuple(k + 1 if x == k else k if x == k + 1 else x for x in w)
            out.extend((k,) + rest for rest in reduced_words(shorter))
    return sorted(out)


def is_reduced(n: int, word: Sequence[int]) -> bool:
    return length(from_word(n, word)) == len(word)


def act(w: Sequence[int], seq: Sequence) -> tuple:
    """w . (i_1, ..., i_n), with (w . i)_{w(r)} = i_r."""
    out = [None] * len(seq)
    for r, item in enumerate(seq, start=1):
        out[w[r - 1] - 1] = item
    return tuple(out)


def swap(seq: Sequence, k: int) -> tuple:
    """s_k . seq."""
    out = list(seq)
    out[k - 1], out[k] = out[k], out[k - 1]
    return tuple(out)


def bruhat_le(u: Sequence[int], w: Sequence[int]) -> bool:
    """u <= w in the Bruhat order, by the rank-matrix criterion."""
    n = len(w)
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            if sum(1 for a in range(i) if u[a] >= k) > sum(1 for a in range(i) if w[a] >= k):
                return False
    return True


def bruhat_lt(u: Sequence[int], w: Sequence[int]) -> bool:
    return tuple(u) != tuple(w) and bruhat_le(u, w)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Perm, ...]:
    """S_n sorted by length, then lexicographically."""
    return tuple(sorted(permutations(range(1, n + 1)), key=lambda w: (length(w), w)))
