"""
Two reductions on canonical paired arrays and their inverses.

Both reductions number the objects of a row left to right, the mark counting
as the last object of its cell, so a row with ``p`` vertices carries numbers
``1 .. p + 1``.

``xi`` strips redundant pairs: non-mixed pairs neither of whose vertices is
the rightmost vertex of an unmarked cell.  What is left is a minimal array,
and the removed pairs are remembered as partial pairings of the row numbers.

``zeta`` strips the remaining non-mixed pairs from a minimal array.  Each such
pair has exactly one vertex ``u`` that is rightmost in an unmarked cell; its
cell becomes marked and the partners are remembered as a sequence whose order
is fixed by running the completion algorithm backwards on the rightmost
forest.  The result is a vertical array.
"""
from __future__ import annotations

import bisect
import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .arrays import BOX, PairedArray, Vertex, number_row, validate
from .forests import CompletionInput, fca_forward, fca_inverse

__all__ = [
    "PartialPairing",
    "XiImage",
    "ZetaImage",
    "ReductionError",
    "redundant_pairs",
    "is_minimal",
    "xi",
    "xi_inverse",
    "zeta",
    "zeta_inverse",
    "enumerate_partial_pairings",
    "enumerate_injections",
]


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class PartialPairing:
    """Disjoint pairs of positive integers."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(pr)) for pr in self.pairs))
        flat = [x for pr in pairs for x in pr]
        if len(set(flat)) != len(flat) or any(x < 1 for x in flat):
            raise ValueError(f"{pairs} is not a partial pairing of positive integers")
        object.__setattr__(self, "pairs", pairs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(x for pr in self.pairs for x in pr)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class XiImage:
    mu_top: PartialPairing
    mu_bottom: PartialPairing
    minimal: PairedArray


@dataclass(frozen=True)
class ZetaImage:
    kappa_top: tuple[int, ...]
    kappa_bottom: tuple[int, ...]
    vertical: PairedArray


def _require_valid_canonical(array: PairedArray) -> None:
    if not array.is_canonical:
        raise ReductionError("expected a canonical array (one mark per row)")
    report = validate(array)
    if not report.ok:
        raise ReductionError(f"array is not valid: {report.witnesses}")


def redundant_pairs(array: PairedArray) -> list[tuple[Vertex, Vertex]]:
    return [(a, b) for a, b in array.pairs
            if a[0] == b[0]
            and not array.is_rightmost_unmarked(a) and not array.is_rightmost_unmarked(b)]


def is_minimal(array: PairedArray) -> bool:
    return not redundant_pairs(array)


def _numbers(array: PairedArray, row: int) -> dict[Vertex, int]:
    return {obj: t for t, obj in enumerate(number_row(array, row), 1)}


def xi(array: PairedArray) -> XiImage:
    _require_valid_canonical(array)
    redundant = redundant_pairs(array)
    mus = []
    for row in (1, 2):
        num = _numbers(array, row)
        mus.append(PartialPairing(tuple((num[a], num[b]) for a, b in redundant if a[0] == row)))
    removed = {v for pr in redundant for v in pr}
    return XiImage(mus[0], mus[1], array.without(removed))


def _rebuild_row(array: PairedArray, row: int, total: int, inserted: Sequence[int],
                 promote: frozenset[int] = frozenset()):
    """
    Lay out numbers ``1 .. total`` over the cells of ``row``.

    The numbers not in ``inserted`` label the existing objects of the row in
    order.  An inserted number joins the cell of the next larger existing
    number.  Marks whose number is in ``promote`` become vertices.

    Returns ``(sizes, marks, vertex_of_number, old_to_new)``.
    """
    inserted_set = set(inserted)
    if len(inserted_set) != len(inserted) or not inserted_set <= set(range(1, total + 1)):
        raise ReductionError(f"row {row}: inserted numbers {sorted(inserted)} are not distinct "
                             f"elements of [{total}]")
    keep = [t for t in range(1, total + 1) if t not in inserted_set]
    objs = number_row(array, row)
    if len(objs) != len(keep):
        raise ReductionError(f"row {row}: {len(objs)} objects but {len(keep)} numbers to place")
    obj_of = dict(zip(keep, objs))
    col_of = {t: obj[1] for t, obj in obj_of.items()}
    for t in inserted:
        nxt = bisect.bisect_right(keep, t)
        if nxt == len(keep):
            raise ReductionError(f"row {row}: nothing to the right of inserted number {t}")
        col_of[t] = col_of[keep[nxt]]

    per_col: dict[int, list[int]] = {}
    for t in range(1, total + 1):
        per_col.setdefault(col_of[t], []).append(t)
    sizes = []
    marks = set()
    vertex_of: dict[int, Vertex] = {}
    for col in range(1, array.k + 1):
        pos = 0
        for t in per_col.get(col, ()):
            obj = obj_of.get(t)
            if obj is not None and obj[2] == BOX and t not in promote:
                marks.add(col)
                continue
            vertex_of[t] = (row, col, pos)
            pos += 1
        sizes.append(pos)
    old_to_new = {obj: vertex_of[t] for t, obj in obj_of.items() if obj[2] != BOX}
    return sizes, marks, vertex_of, old_to_new


def xi_inverse(mu_top: PartialPairing, mu_bottom: PartialPairing,
               minimal: PairedArray) -> PairedArray:
    sizes, marks, pairs = {}, {}, []
    maps = {}
    for row, mu in ((1, mu_top), (2, mu_bottom)):
        total = sum(minimal.sizes(row)) + 2 * len(mu) + len(minimal.marks(row))
        inserted = sorted(mu.support)
        sizes[row], marks[row], vertex_of, maps[row] = _rebuild_row(minimal, row, total, inserted)
        pairs.extend((vertex_of[a], vertex_of[b]) for a, b in mu.pairs)
    for a, b in minimal.pairs:
        pairs.append((maps[a[0]][a], maps[b[0]][b]))
    return PairedArray(tuple(sizes[1]), tuple(sizes[2]), tuple(pairs),
                       frozenset(marks[1]), frozenset(marks[2]))


def zeta(array: PairedArray) -> ZetaImage:
    _require_valid_canonical(array)
    if not is_minimal(array):
        raise ReductionError("zeta needs a minimal array; apply xi first")
    kappas = []
    new_marks = {}
    removed: set[Vertex] = set()
    for row in (1, 2):
        num = _numbers(array, row)
        found = []
        for a, b in array.pairs:
            if a[0] != row or b[0] != row:
                continue
            ends = [v for v in (a, b) if array.is_rightmost_unmarked(v)]
            if len(ends) != 1:
                raise ReductionError(f"pair {a}-{b} has {len(ends)} rightmost unmarked vertices")
            u = ends[0]
            found.append((num[u], u, a if u == b else b))
            removed.update((a, b))
        found.sort()
        tree = array.rightmost_forest(row)
        inv = fca_inverse(tree, [(u[1], v[1]) for _, u, v in found])
        # removals sorted by column of u, which is the same order as by number of u
        kappa = tuple(num[found[x - 1][2]] for x in inv.sigma)
        kappas.append(kappa)
        new_marks[row] = array.marks(row) | {u[1] for _, u, _ in found}
    vertical = array.without(removed, new_marks[1], new_marks[2])
    return ZetaImage(kappas[0], kappas[1], vertical)


def zeta_inverse(kappa_top: Sequence[int], kappa_bottom: Sequence[int],
                 vertical: PairedArray) -> PairedArray:
    if not vertical.is_vertical:
        raise ReductionError("zeta_inverse needs a vertical array")
    report = validate(vertical)
    if not report.ok:
        raise ReductionError(f"array is not valid: {report.witnesses}")
    sizes, marks, pairs, maps = {}, {}, [], {}
    for row, kappa in ((1, tuple(kappa_top)), (2, tuple(kappa_bottom))):
        row_marks = vertical.marks(row)
        if len(kappa) != len(row_marks) - 1:
            raise ReductionError(f"row {row}: {len(kappa)} partners for {len(row_marks)} marks")
        objs = number_row(vertical, row)
        total = len(objs) + len(kappa)
        keep = [t for t in range(1, total + 1) if t not in set(kappa)]
        if len(keep) != len(objs):
            raise ReductionError(f"row {row}: partners {kappa} are not distinct in [{total}]")
        forest = vertical.rightmost_forest(row)
        col_w = []
        for t in kappa:
            nxt = bisect.bisect_right(keep, t)
            if nxt == len(keep):
                raise ReductionError(f"row {row}: nothing to the right of partner {t}")
            col_w.append(objs[nxt][1])
        if kappa:
            keeper = forest.root_of(col_w[-1])
            if keeper not in row_marks:
                raise ReductionError(f"row {row}: last partner is not under a mark")
        else:
            (keeper,) = row_marks
        box_number = {obj[1]: t for t, obj in zip(keep, objs) if obj[2] == BOX}
        eliminated = tuple(sorted(c for c in row_marks if c != keeper))
        promote = frozenset(box_number[c] for c in eliminated)
        sizes[row], _, vertex_of, maps[row] = _rebuild_row(vertical, row, total, kappa, promote)
        marks[row] = frozenset({keeper})
        if kappa:
            res = fca_forward(CompletionInput(forest, eliminated, tuple(col_w)))
            for ell, c in enumerate(eliminated):
                partner = kappa[res.fcp[ell] - 1]
                pairs.append((vertex_of[box_number[c]], vertex_of[partner]))
    for a, b in vertical.pairs:
        pairs.append((maps[a[0]][a], maps[b[0]][b]))
    return PairedArray(tuple(sizes[1]), tuple(sizes[2]), tuple(pairs), marks[1], marks[2])


def enumerate_partial_pairings(n: int, size: int) -> Iterator[PartialPairing]:
    """Partial pairings of ``[n]`` with exactly ``size`` pairs."""

    def matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
        if not points:
            yield []
            return
        a = points[0]
        for idx in range(1, len(points)):
            rest = points[1:idx] + points[idx + 1:]
            for tail in matchings(rest):
                yield [(a, points[idx])] + tail

    for support in itertools.combinations(range(1, n + 1), 2 * size):
        for m in matchings(list(support)):
            yield PartialPairing(tuple(m))


def enumerate_injections(n: int, length: int) -> Iterator[tuple[int, ...]]:
    """Sequences of ``length`` distinct elements of ``[n]``."""
    return itertools.permutations(range(1, n + 1), length)
