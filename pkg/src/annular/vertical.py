"""
Vertical paired arrays: exhaustive enumeration and the type/shape profile.

In a vertical array every pair is mixed, so by balance both cells of a
column hold the same number of vertices; the list of those numbers is the
shape.  A full array has a positive shape.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

from .arrays import PairedArray, Vertex, validate
from .forests import fca_inverse

__all__ = [
    "VerticalArrayProfile",
    "ProfileError",
    "compositions",
    "enumerate_vertical_arrays",
    "profile",
]


class ProfileError(ValueError):
    pass


def compositions(total: int, parts: int, *, positive: bool = True) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` parts (weak ones when ``positive`` is false)."""
    lo = 1 if positive else 0
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, total - lo * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, positive=positive):
            yield (first,) + rest


def _row_forest_ok(rightmost_target: list[int], marks: frozenset[int], k: int) -> bool:
    # rightmost_target[c] is the column reached from column c (0 when the cell is empty)
    for c in range(1, k + 1):
        if c in marks or not rightmost_target[c]:
            continue
        x, steps = c, 0
        while x not in marks:
            x = rightmost_target[x]
            steps += 1
            if not x or steps > k:
                return False
    return True


def enumerate_vertical_arrays(s: int, k: int, i: int, j: int, *,
                              full: bool = False) -> Iterator[PairedArray]:
    """
    Every valid vertical array with ``s`` pairs, ``k`` columns, ``i + 1`` marks
    on top and ``j + 1`` below.

    Brute force over shape, matching and marks; only for small instances.
    """
    if min(s, k) < 1 or min(i, j) < 0:
        return
    cols = range(1, k + 1)
    for shape in compositions(s, k, positive=full):
        col_of = [c for c in cols for _ in range(shape[c - 1])]
        last = {}
        start = 0
        for c in cols:
            start += shape[c - 1]
            if shape[c - 1]:
                last[c] = start - 1
        top = [(1, c, pos) for c in cols for pos in range(shape[c - 1])]
        bottom = [(2, c, pos) for c in cols for pos in range(shape[c - 1])]
        for perm in itertools.permutations(range(s)):
            inv = [0] * s
            for a, b in enumerate(perm):
                inv[b] = a
            target_top = [0] * (k + 1)
            target_bottom = [0] * (k + 1)
            for c, idx in last.items():
                target_top[c] = col_of[perm[idx]]
                target_bottom[c] = col_of[inv[idx]]
            for marks_top in itertools.combinations(cols, i + 1):
                mt = frozenset(marks_top)
                if not _row_forest_ok(target_top, mt, k):
                    continue
                for marks_bottom in itertools.combinations(cols, j + 1):
                    mb = frozenset(marks_bottom)
                    if not full and any(not shape[c - 1] and c not in mt and c not in mb
                                        for c in cols):
                        continue
                    if not _row_forest_ok(target_bottom, mb, k):
                        continue
                    pairs = tuple((top[a], bottom[perm[a]]) for a in range(s))
                    yield PairedArray(shape, shape, pairs, mt, mb)


@dataclass(frozen=True)
class VerticalArrayProfile:
    """Tail, the two anchor vertices and the shape of a full vertical array."""

    tail: tuple[int, ...]
    a_prime: Vertex
    b: Vertex
    shape: tuple[int, ...]
    a_prime_by_fca: bool
    b_by_fca: bool

    def __post_init__(self):
        if len(set(self.tail)) != len(self.tail):
            raise ProfileError(f"tail {self.tail} repeats a column")
        if min(self.shape) < 1:
            raise ProfileError(f"shape {self.shape} is not a composition")

    @property
    def tail_length(self) -> int:
        return len(self.tail) - 1

    @property
    def type(self) -> tuple[int, tuple[int, ...], Vertex, Vertex]:
        return (self.tail_length, self.tail, self.a_prime, self.b)

    def b_in_tail(self) -> bool:
        return self.b[1] in self.tail


def _dependent(array: PairedArray, v: Vertex) -> bool:
    return array.is_rightmost_unmarked(array.mate[v])


def _rightmost_non_dependent(array: PairedArray, row: int) -> Vertex:
    for v in reversed(array.vertices(row)):
        if not _dependent(array, v):
            return v
    raise ProfileError(f"row {row} has no non-dependent vertex")


def profile(array: PairedArray) -> VerticalArrayProfile:
    """
    Type and shape of a full vertical array.

    ``a'`` comes from undoing the completion of the top forest down to its
    shared arcs; the tail is the path of shared arcs from the column of
    ``a'`` to its root; ``b`` comes from undoing the completion of the
    bottom forest down to the reversed tail.
    """
    if not array.is_vertical or not array.is_full:
        raise ProfileError("profile needs a full vertical array")
    report = validate(array)
    if not report.ok:
        raise ProfileError(f"array is not valid: {report.witnesses}")
    forest_top, forest_bottom = report.forests
    shape = array.shape()
    mate = array.mate

    shared_tails = set()
    non_shared = []
    for c in report.psi[0]:
        x = array.rightmost(1, c)
        y = mate[x]
        if array.is_rightmost_unmarked(y):
            shared_tails.add(c)
        else:
            non_shared.append((x, y))
    non_shared.sort()
    if non_shared:
        inv = fca_inverse(forest_top, [(x[1], y[1]) for x, y in non_shared])
        a_prime = non_shared[inv.sigma[-1] - 1][1]
        a_by_fca = True
    else:
        a_prime = mate[_rightmost_non_dependent(array, 1)]
        a_by_fca = False

    tail = [a_prime[1]]
    while tail[-1] in shared_tails:
        tail.append(forest_top.parents[tail[-1] - 1])
    # the same pairs seen from the bottom row point back along the tail
    keep_bottom = {tail[t + 1] for t in range(len(tail) - 1)}
    removals = []
    for c in report.psi[1]:
        if c in keep_bottom:
            continue
        w = array.rightmost(2, c)
        removals.append((w, mate[w]))
    removals.sort()
    if removals:
        inv = fca_inverse(forest_bottom, [(w[1], z[1]) for w, z in removals])
        b = removals[inv.sigma[-1] - 1][1]
        b_by_fca = True
    else:
        b = mate[_rightmost_non_dependent(array, 2)]
        b_by_fca = False
    return VerticalArrayProfile(tuple(tail), a_prime, b, shape, a_by_fca, b_by_fca)
