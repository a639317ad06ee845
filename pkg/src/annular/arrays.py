"""
Paired arrays and paired surjections.

A paired array has ``k`` columns and two rows of cells.  Each cell holds an
ordered list of unlabelled vertices; a vertex is addressed structurally as
``(row, column, position)`` with ``row`` in ``{1, 2}``, ``column`` in
``1..k`` and ``position`` counted from 0 at the left of its cell.  All
vertices are perfectly matched, and each row carries a nonempty set of marked
columns.

Three conditions make such an array valid:

* balance: in every column, the mixed pairs touching the top cell are as many
  as those touching the bottom cell;
* nonempty: every column that is marked in neither row has a vertex;
* forest: for each row, sending an unmarked nonempty cell to the column of
  the vertex its rightmost vertex is matched with gives a forest whose roots
  are exactly the marked columns of that row.

A paired surjection ``(mu, phi)`` (a pairing plus a surjection onto ``[k]``
that is constant along the cycles of ``mu gamma^{-1}``) determines a
canonical array, and the array determines the surjection again through label
recovery.
"""
from __future__ import annotations

import itertools
import random
import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .combinat import GroundSet, Pairing, compose, enumerate_pairings, gamma, inverse
from .forests import RootedForest

__all__ = [
    "BOX",
    "Vertex",
    "PairedArray",
    "ValidationReport",
    "PairedSurjection",
    "RecoveryError",
    "validate",
    "from_paired_surjection",
    "label_recovery",
    "enumerate_paired_surjections",
    "enumerate_canonical_arrays",
    "random_paired_surjection",
    "number_row",
    "render",
    "parse_array",
]

Vertex = tuple[int, int, int]
# position used for the mark while numbering a row; it sorts after every vertex of its cell
BOX = 1 << 30


class RecoveryError(ValueError):
    pass


@dataclass(frozen=True)
class PairedArray:
    top: tuple[int, ...]
    bottom: tuple[int, ...]
    pairs: tuple[tuple[Vertex, Vertex], ...]
    marks_top: frozenset[int]
    marks_bottom: frozenset[int]

    def __post_init__(self):
        top, bottom = tuple(self.top), tuple(self.bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "marks_top", frozenset(self.marks_top))
        object.__setattr__(self, "marks_bottom", frozenset(self.marks_bottom))
        pairs = tuple(sorted(tuple(sorted(pr)) for pr in self.pairs))
        object.__setattr__(self, "pairs", pairs)

        k = len(top)
        if k < 1 or len(bottom) != k:
            raise ValueError(f"rows must both have k >= 1 cells, got {len(top)} and {len(bottom)}")
        if min(top + bottom) < 0:
            raise ValueError("cell sizes must be nonnegative")
        for marks in (self.marks_top, self.marks_bottom):
            if not marks:
                raise ValueError("each row needs at least one marked cell")
            if not marks <= set(range(1, k + 1)):
                raise ValueError(f"marks {sorted(marks)} outside columns 1..{k}")
        expected = sorted(self.vertices())
        got = sorted(v for pr in pairs for v in pr)
        if got != expected:
            raise ValueError("pairs must cover every vertex exactly once")

    @property
    def k(self) -> int:
        return len(self.top)

    @property
    def p(self) -> int:
        return sum(self.top)

    @property
    def q(self) -> int:
        return sum(self.bottom)

    def sizes(self, row: int) -> tuple[int, ...]:
        return self.top if row == 1 else self.bottom

    def marks(self, row: int) -> frozenset[int]:
        return self.marks_top if row == 1 else self.marks_bottom

    def vertices(self, row: int | None = None) -> list[Vertex]:
        rows = (1, 2) if row is None else (row,)
        return [(r, c, pos) for r in rows
                for c, size in enumerate(self.sizes(r), 1) for pos in range(size)]

    @cached_property
    def mate(self) -> dict[Vertex, Vertex]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    @property
    def mixed_count(self) -> int:
        return sum(a[0] != b[0] for a, b in self.pairs)

    @property
    def is_canonical(self) -> bool:
        return len(self.marks_top) == 1 and len(self.marks_bottom) == 1

    @property
    def is_vertical(self) -> bool:
        return all(a[0] != b[0] for a, b in self.pairs)

    @property
    def is_full(self) -> bool:
        return all(t + b > 0 for t, b in zip(self.top, self.bottom))

    def rightmost(self, row: int, col: int) -> Vertex | None:
        size = self.sizes(row)[col - 1]
        return (row, col, size - 1) if size else None

    def is_rightmost_unmarked(self, v: Vertex) -> bool:
        row, col, pos = v
        return pos == self.sizes(row)[col - 1] - 1 and col not in self.marks(row)

    def psi(self, row: int) -> dict[int, int]:
        """Column reached from each unmarked nonempty cell through its rightmost vertex."""
        marks = self.marks(row)
        out = {}
        for col, size in enumerate(self.sizes(row), 1):
            if size and col not in marks:
                out[col] = self.mate[(row, col, size - 1)][1]
        return out

    def rightmost_forest(self, row: int) -> RootedForest:
        """
        The rightmost forest of ``row`` as a forest on ``[k]``.

        Columns with no vertex and no mark in this row appear as isolated
        roots.  Raises if the forest condition fails.
        """
        parents = [0] * self.k
        for col, target in self.psi(row).items():
            parents[col - 1] = target
        return RootedForest(tuple(parents))

    def shape(self) -> tuple[int, ...]:
        if self.top != self.bottom:
            raise ValueError("shape is defined for arrays with equal cell sizes in both rows")
        return self.top

    def without(self, removed: set[Vertex], marks_top=None, marks_bottom=None) -> PairedArray:
        """Drop whole pairs, keeping the relative order inside each cell."""
        for v in removed:
            if self.mate[v] not in removed:
                raise ValueError(f"cannot remove {v} without its mate")
        remap: dict[Vertex, Vertex] = {}
        sizes = {1: [], 2: []}
        for row in (1, 2):
            for col, size in enumerate(self.sizes(row), 1):
                pos = 0
                for old in range(size):
                    v = (row, col, old)
                    if v in removed:
                        continue
                    remap[v] = (row, col, pos)
                    pos += 1
                sizes[row].append(pos)
        pairs = [(remap[a], remap[b]) for a, b in self.pairs if a not in removed]
        return PairedArray(tuple(sizes[1]), tuple(sizes[2]), tuple(pairs),
                           self.marks_top if marks_top is None else marks_top,
                           self.marks_bottom if marks_bottom is None else marks_bottom)

    def __str__(self) -> str:
        return render(self)


@dataclass
class ValidationReport:
    balance: bool
    nonempty: bool
    forest: bool
    witnesses: dict[str, list] = field(default_factory=dict)
    psi: tuple[dict[int, int], dict[int, int]] = ({}, {})
    forests: tuple[RootedForest | None, RootedForest | None] = (None, None)

    @property
    def ok(self) -> bool:
        return self.balance and self.nonempty and self.forest

    def __bool__(self) -> bool:
        return self.ok


def validate(array: PairedArray) -> ValidationReport:
    """Check balance, nonempty and forest conditions, with witnesses for each failure."""
    k = array.k
    witnesses: dict[str, list] = {"balance": [], "nonempty": [], "forest": []}

    mixed_top = [0] * (k + 1)
    mixed_bottom = [0] * (k + 1)
    for a, b in array.pairs:
        if a[0] != b[0]:
            for v in (a, b):
                (mixed_top if v[0] == 1 else mixed_bottom)[v[1]] += 1
    for col in range(1, k + 1):
        if mixed_top[col] != mixed_bottom[col]:
            witnesses["balance"].append(col)

    marked = array.marks_top | array.marks_bottom
    for col in range(1, k + 1):
        if col not in marked and array.top[col - 1] + array.bottom[col - 1] == 0:
            witnesses["nonempty"].append(col)

    psis = []
    forests: list[RootedForest | None] = []
    for row in (1, 2):
        psi = array.psi(row)
        psis.append(psi)
        sizes = array.sizes(row)
        bad = [(row, col, target) for col, target in psi.items() if not sizes[target - 1]]
        if not bad:
            parents = [0] * (k + 1)
            for col, target in psi.items():
                parents[col] = target
            for col in psi:
                x, steps = col, 0
                while parents[x]:
                    x = parents[x]
                    steps += 1
                    if steps > k:
                        bad.append((row, col, "cycle"))
                        break
        if bad:
            witnesses["forest"].extend(bad)
            forests.append(None)
        else:
            forests.append(array.rightmost_forest(row))

    return ValidationReport(
        balance=not witnesses["balance"],
        nonempty=not witnesses["nonempty"],
        forest=not witnesses["forest"],
        witnesses={key: val for key, val in witnesses.items() if val},
        psi=(psis[0], psis[1]),
        forests=(forests[0], forests[1]),
    )


# ---------------------------------------------------------------------------
# paired surjections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairedSurjection:
    """``mu`` with ``phi`` given per encoded point (``phi[i]`` in ``1..k``)."""

    mu: Pairing
    phi: tuple[int, ...]
    k: int

    def __post_init__(self):
        ground = self.mu.ground
        if len(self.phi) != ground.size:
            raise ValueError(f"phi has {len(self.phi)} values for {ground.size} points")
        if set(self.phi) != set(range(1, self.k + 1)):
            raise ValueError(f"phi is not a surjection onto [{self.k}]")
        g = gamma(ground.p, ground.q).images
        mate = self.mu.mate
        for i in range(ground.size):
            if self.phi[mate[i]] != self.phi[g[i]]:
                raise ValueError(
                    f"phi(mu({ground.label(i)})) != phi(gamma({ground.label(i)}))")

    @classmethod
    def from_labels(cls, p: int, q: int, pairs, blocks: Sequence[Sequence[int | str]]) -> PairedSurjection:
        """``blocks[c - 1]`` lists the points sent to column ``c``."""
        mu = Pairing.from_labels(p, q, pairs)
        phi = [0] * (p + q)
        for col, block in enumerate(blocks, 1):
            for label in block:
                phi[mu.ground.index(label)] = col
        return cls(mu, tuple(phi), len(blocks))

    @property
    def ground(self) -> GroundSet:
        return self.mu.ground


def from_paired_surjection(ps: PairedSurjection) -> PairedArray:
    """Cells hold each fibre in increasing order; mark the columns of ``1`` and ``1'``."""
    ground = ps.ground
    p, q, k = ground.p, ground.q, ps.k
    if p < 1 or q < 1:
        raise ValueError("paired arrays need p, q >= 1")
    where: list[Vertex] = [None] * ground.size  # type: ignore[list-item]
    top = [0] * k
    bottom = [0] * k
    for i in range(ground.size):
        col = ps.phi[i]
        if i < p:
            where[i] = (1, col, top[col - 1])
            top[col - 1] += 1
        else:
            where[i] = (2, col, bottom[col - 1])
            bottom[col - 1] += 1
    pairs = tuple((where[a], where[b]) for a, b in ps.mu.pairs)
    return PairedArray(tuple(top), tuple(bottom), pairs,
                       frozenset({ps.phi[0]}), frozenset({ps.phi[p]}))


def label_recovery(array: PairedArray) -> PairedSurjection:
    """
    Rebuild ``(mu, phi)`` from a valid canonical array.

    Label ``1`` goes on the leftmost vertex of the marked top cell; label
    ``i`` goes on the leftmost unlabelled top vertex in the column of the
    mate of vertex ``i - 1``.  The bottom row is labelled the same way.
    """
    if not array.is_canonical:
        raise RecoveryError("label recovery needs a canonical array")
    p, q = array.p, array.q
    ground = GroundSet(p, q)
    index_of: dict[Vertex, int] = {}
    phi = [0] * (p + q)
    for row, count, offset in ((1, p, 0), (2, q, p)):
        sizes = array.sizes(row)
        used = [0] * (array.k + 1)
        (col,) = array.marks(row)
        for label in range(count):
            if used[col] >= sizes[col - 1]:
                raise RecoveryError(f"row {row}: no unlabelled vertex left in column {col} "
                                    f"for label {label + 1}")
            v = (row, col, used[col])
            used[col] += 1
            index_of[v] = offset + label
            phi[offset + label] = col
            col = array.mate[v][1]
    mu = Pairing(ground, tuple((index_of[a], index_of[b]) for a, b in array.pairs))
    try:
        return PairedSurjection(mu, tuple(phi), array.k)
    except ValueError as exc:
        raise RecoveryError(f"recovered labels are inconsistent: {exc}") from None


def enumerate_paired_surjections(p: int, q: int, s: int, k: int) -> Iterator[PairedSurjection]:
    """All surjections onto ``[k]`` constant on the cycles of ``mu gamma^{-1}``, over every ``mu``."""
    g_inv = inverse(gamma(p, q))
    for mu in enumerate_pairings(p, q, s):
        cycles = compose(mu.as_permutation(), g_inv).cycles()
        for cols in itertools.product(range(1, k + 1), repeat=len(cycles)):
            if len(set(cols)) != k:
                continue
            phi = [0] * (p + q)
            for cycle, col in zip(cycles, cols):
                for x in cycle:
                    phi[x] = col
            yield PairedSurjection(mu, tuple(phi), k)


def random_paired_surjection(rng: random.Random, p: int, q: int,
                             k: int | None = None) -> PairedSurjection:
    """
    A random pairing of ``[p] ∪ [q]'`` with a random surjection from its cycles onto ``[k]``.

    ``k`` defaults to a uniform choice up to the number of cycles; the
    result is not uniform over paired surjections.
    """
    total = p + q
    if p < 1 or q < 1 or total % 2:
        raise ValueError(f"need p, q >= 1 with p + q even, got p={p}, q={q}")
    points = list(range(total))
    rng.shuffle(points)
    mu = Pairing(GroundSet(p, q), tuple(zip(points[::2], points[1::2])))
    cycles = compose(mu.as_permutation(), inverse(gamma(p, q))).cycles()
    if k is None:
        k = rng.randint(1, len(cycles))
    if not 1 <= k <= len(cycles):
        raise ValueError(f"k={k} outside 1..{len(cycles)} for this pairing")
    cols = list(range(1, k + 1)) + [rng.randint(1, k) for _ in range(len(cycles) - k)]
    rng.shuffle(cols)
    phi = [0] * total
    for cycle, col in zip(cycles, cols):
        for x in cycle:
            phi[x] = col
    return PairedSurjection(mu, tuple(phi), k)


def enumerate_canonical_arrays(p: int, q: int, s: int, k: int) -> Iterator[PairedArray]:
    for ps in enumerate_paired_surjections(p, q, s, k):
        yield from_paired_surjection(ps)


# ---------------------------------------------------------------------------
# numbering and text form
# ---------------------------------------------------------------------------

def number_row(array: PairedArray, row: int) -> list[Vertex]:
    """
    Vertices and marks of ``row`` in left-to-right order.

    A mark is the object ``(row, col, BOX)`` and sits after every vertex of
    its cell.  Position ``t`` in the list carries the number ``t + 1``.
    """
    marks = array.marks(row)
    out: list[Vertex] = []
    for col, size in enumerate(array.sizes(row), 1):
        out.extend((row, col, pos) for pos in range(size))
        if col in marks:
            out.append((row, col, BOX))
    return out


def _vertex_labels(array: PairedArray) -> dict[Vertex, str]:
    labels = {}
    for row, suffix in ((1, ""), (2, "'")):
        for n, v in enumerate(array.vertices(row), 1):
            labels[v] = f"{n}{suffix}"
    return labels


def render(array: PairedArray) -> str:
    """
    Plain-text dump: a header, one line per row, one line of pairs.

    Vertices are numbered left to right per row (``1 2 ...`` on top,
    ``1' 2' ...`` below) and ``▣`` closes a marked cell::

        PairedArray k=1 p=1 q=1 s=1
        row 1: [1 ▣]
        row 2: [1' ▣]
        pairs: {1,1'}
    """
    labels = _vertex_labels(array)
    lines = [f"PairedArray k={array.k} p={array.p} q={array.q} s={array.mixed_count}"]
    for row in (1, 2):
        cells = []
        for col, size in enumerate(array.sizes(row), 1):
            items = [labels[(row, col, pos)] for pos in range(size)]
            if col in array.marks(row):
                items.append("▣")
            cells.append("[" + " ".join(items) + "]")
        lines.append(f"row {row}: " + " ".join(cells))
    pairs = sorted(array.pairs, key=lambda pr: (pr[0][0], labels_key(labels[pr[0]])))
    lines.append("pairs: " + " ".join("{" + labels[a] + "," + labels[b] + "}" for a, b in pairs))
    return "\n".join(lines)


def labels_key(label: str) -> int:
    return int(label.rstrip("'"))


_CELL = re.compile(r"\[([^\]]*)\]")


def parse_array(text: str) -> PairedArray:
    """Inverse of :func:`render`; the header line is optional."""
    rows: dict[int, list[list[str]]] = {}
    pair_tokens: list[str] = []
    for line in text.strip().splitlines():
        line = line.strip()
        if line.startswith("row "):
            head, rest = line.split(":", 1)
            rows[int(head.split()[1])] = [cell.split() for cell in _CELL.findall(rest)]
        elif line.startswith("pairs:"):
            pair_tokens = re.findall(r"\{([^}]*)\}", line)
    if set(rows) != {1, 2}:
        raise ValueError("need both 'row 1:' and 'row 2:' lines")
    where: dict[str, Vertex] = {}
    sizes = {1: [], 2: []}
    marks = {1: set(), 2: set()}
    for row in (1, 2):
        for col, cell in enumerate(rows[row], 1):
            pos = 0
            for item in cell:
                if item == "▣":
                    marks[row].add(col)
                    continue
                where[item] = (row, col, pos)
                pos += 1
            sizes[row].append(pos)
    pairs = []
    for token in pair_tokens:
        a, b = (x.strip() for x in token.split(","))
        pairs.append((where[a], where[b]))
    return PairedArray(tuple(sizes[1]), tuple(sizes[2]), tuple(pairs),
                       frozenset(marks[1]), frozenset(marks[2]))
