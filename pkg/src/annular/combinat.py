"""
Ground sets, permutations, pairings and exact integer helpers.

Points of ``[p] ∪ [q]'`` are written ``1 .. p`` and ``1' .. q'`` in every
external format.  Internally the unprimed point ``i`` is stored at index
``i - 1`` and the primed point ``j'`` at index ``p + j - 1``; nothing outside
this module should depend on that encoding.

Composition is fixed once for the whole package: ``compose(f, g)(i) ==
f(g(i))``.  The product ``mu gamma^{-1}`` is therefore ``compose(mu,
inverse(gamma))``.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "GroundSet",
    "Permutation",
    "Pairing",
    "CycleDistribution",
    "gamma",
    "compose",
    "inverse",
    "cycle_count",
    "enumerate_pairings",
    "pairing_count",
    "binom",
    "double_factorial",
    "falling_factorial",
]


# ---------------------------------------------------------------------------
# exact arithmetic
# ---------------------------------------------------------------------------

def binom(n: int, k: int) -> int:
    """
    Binomial coefficient with the out-of-range convention.

    >>> binom(5, 2), binom(3, -1), binom(0, 0), binom(2, 5)
    (10, 0, 1, 0)
    """
    if n < 0:
        raise ValueError(f"binom: negative upper index {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def double_factorial(m: int) -> int:
    """
    ``m!!`` for odd ``m >= -1`` with ``(-1)!! = 1``.

    >>> double_factorial(-1), double_factorial(5), double_factorial(15)
    (1, 15, 2027025)
    """
    if m < -1 or m % 2 == 0:
        raise ValueError(f"double_factorial expects an odd integer >= -1, got {m}")
    result = 1
    for t in range(m, 0, -2):
        result *= t
    return result


def falling_factorial(x: int, i: int) -> int:
    """
    ``(x)_i = x (x-1) ... (x-i+1)``; 1 for ``i == 0`` and 0 for ``i < 0``.

    >>> falling_factorial(5, 2), falling_factorial(7, 0), falling_factorial(3, -1)
    (20, 1, 0)
    """
    if i < 0:
        return 0
    result = 1
    for t in range(i):
        result *= x - t
    return result


def pairing_count(p: int, q: int, s: int | None = None) -> int:
    """Number of pairings of ``[p] ∪ [q]'``, optionally with exactly ``s`` mixed pairs."""
    _check_pairing_args(p, q, s)
    if s is None:
        return double_factorial(p + q - 1)
    return (binom(p, s) * binom(q, s) * math.factorial(s)
            * double_factorial(p - s - 1) * double_factorial(q - s - 1))


def _check_pairing_args(p: int, q: int, s: int | None) -> None:
    if p < 0 or q < 0:
        raise ValueError(f"negative row size: p={p}, q={q}")
    if (p + q) % 2:
        raise ValueError(f"p + q must be even, got p={p}, q={q}")
    if s is not None:
        if s < 0 or s > min(p, q):
            raise ValueError(f"mixed count s={s} outside 0..min(p, q)={min(p, q)}")
        if (p - s) % 2 or (q - s) % 2:
            raise ValueError(f"s={s} must have the parity of p={p} and q={q}")


# ---------------------------------------------------------------------------
# ground set and permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroundSet:
    """The set ``[p] ∪ [q]'``."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"negative row size: p={self.p}, q={self.q}")

    @property
    def size(self) -> int:
        return self.p + self.q

    def index(self, label: int | str) -> int:
        """Encode a point given as ``3`` / ``"3"`` (row 1) or ``"3'"`` (row 2)."""
        if isinstance(label, str):
            text = label.strip()
            if text.endswith("'"):
                j = int(text[:-1])
                if not 1 <= j <= self.q:
                    raise ValueError(f"point {label!r} outside [{self.q}]'")
                return self.p + j - 1
            label = int(text)
        if not 1 <= label <= self.p:
            raise ValueError(f"point {label!r} outside [{self.p}]")
        return label - 1

    def label(self, index: int) -> str:
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} outside ground set of size {self.size}")
        if index < self.p:
            return str(index + 1)
        return f"{index - self.p + 1}'"

    def is_primed(self, index: int) -> bool:
        return index >= self.p


@dataclass(frozen=True)
class Permutation:
    """A bijection of a ground set, stored in one-line form over encoded indices."""

    ground: GroundSet
    images: tuple[int, ...]

    def __post_init__(self):
        n = self.ground.size
        if len(self.images) != n or sorted(self.images) != list(range(n)):
            raise ValueError(f"images {self.images} do not form a bijection of {n} points")

    @classmethod
    def identity(cls, ground: GroundSet) -> Permutation:
        return cls(ground, tuple(range(ground.size)))

    @classmethod
    def from_cycles(cls, ground: GroundSet, cycles: Iterable[Iterable[int | str]]) -> Permutation:
        images = list(range(ground.size))
        for cycle in cycles:
            idx = [ground.index(x) for x in cycle]
            for a, b in zip(idx, idx[1:] + idx[:1]):
                images[a] = b
        return cls(ground, tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def cycle_labels(self) -> list[tuple[str, ...]]:
        return [tuple(self.ground.label(x) for x in c) for c in self.cycles()]

    def is_involution(self) -> bool:
        return all(self.images[self.images[i]] == i for i in range(len(self.images)))

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]


def gamma(p: int, q: int = 0) -> Permutation:
    """``(1 2 ... p)(1' 2' ... q')``; with ``q == 0`` this is the single cycle on ``[p]``."""
    if p < 1:
        raise ValueError(f"gamma needs p >= 1, got {p}")
    if q < 0:
        raise ValueError(f"gamma needs q >= 0, got {q}")
    images = [(i + 1) % p for i in range(p)] + [p + (j + 1) % q for j in range(q)]
    return Permutation(GroundSet(p, q), tuple(images))


def compose(f: Permutation, g: Permutation) -> Permutation:
    """``h(i) = f(g(i))``."""
    if f.ground != g.ground:
        raise ValueError(f"cannot compose permutations of {f.ground} and {g.ground}")
    fi = f.images
    return Permutation(f.ground, tuple(fi[x] for x in g.images))


def inverse(f: Permutation) -> Permutation:
    out = [0] * len(f.images)
    for i, x in enumerate(f.images):
        out[x] = i
    return Permutation(f.ground, tuple(out))


def cycle_count(f: Permutation) -> int:
    """Number of disjoint cycles, fixed points included."""
    images = f.images
    seen = bytearray(len(images))
    count = 0
    for start in range(len(images)):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = 1
            x = images[x]
    return count


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Pairing:
    """A perfect matching of ``[p] ∪ [q]'``; ``pairs`` holds sorted index pairs in sorted order."""

    ground: GroundSet
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        normal = tuple(sorted(tuple(sorted(pair)) for pair in self.pairs))
        object.__setattr__(self, "pairs", normal)
        flat = [x for pair in normal for x in pair]
        if sorted(flat) != list(range(self.ground.size)) or any(a == b for a, b in normal):
            raise ValueError(f"pairs {normal} do not partition {self.ground.size} points")

    @classmethod
    def from_labels(cls, p: int, q: int, pairs: Iterable[tuple[int | str, int | str]]) -> Pairing:
        ground = GroundSet(p, q)
        return cls(ground, tuple((ground.index(a), ground.index(b)) for a, b in pairs))

    @cached_property
    def mate(self) -> tuple[int, ...]:
        out = [0] * self.ground.size
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return tuple(out)

    @property
    def mixed_count(self) -> int:
        p = self.ground.p
        return sum((a < p) != (b < p) for a, b in self.pairs)

    def as_permutation(self) -> Permutation:
        return Permutation(self.ground, self.mate)

    def label_pairs(self) -> list[tuple[str, str]]:
        lab = self.ground.label
        return [(lab(a), lab(b)) for a, b in self.pairs]


def enumerate_pairings(p: int, q: int, s: int | None = None,
                       first_partner: int | None = None) -> Iterator[Pairing]:
    """
    Every pairing of ``[p] ∪ [q]'`` exactly once.

    The smallest unpaired point is matched with each larger unpaired point in
    turn, recursively, so the order is deterministic.  ``s`` keeps only
    pairings with that many mixed pairs (branches that cannot reach ``s`` are
    pruned).  ``first_partner`` restricts the stream to the shard where the
    first point is matched with that index, for parallel consumers.

    >>> [pr.label_pairs() for pr in enumerate_pairings(4, 0)]
    [[('1', '2'), ('3', '4')], [('1', '3'), ('2', '4')], [('1', '4'), ('2', '3')]]
    """
    _check_pairing_args(p, q, s)
    ground = GroundSet(p, q)
    n = p + q
    if n == 0:
        if first_partner is None:
            yield Pairing(ground, ())
        return
    if first_partner is not None and not 1 <= first_partner < n:
        raise ValueError(f"first_partner must be in 1..{n - 1}, got {first_partner}")

    def feasible(mixed: int, rest_p: int, rest_q: int) -> bool:
        if s is None:
            return True
        need = s - mixed
        return 0 <= need <= min(rest_p, rest_q) and (rest_p - need) % 2 == 0

    chosen: list[tuple[int, int]] = []

    def rec(rem: list[int], mixed: int, rest_p: int, rest_q: int) -> Iterator[Pairing]:
        if not rem:
            yield Pairing(ground, tuple(chosen))
            return
        a = rem[0]
        partners = range(1, len(rem))
        if first_partner is not None and len(rem) == n:
            partners = [rem.index(first_partner)]
        for idx in partners:
            b = rem[idx]
            is_mixed = (a < p) != (b < p)
            np_ = rest_p - (a < p) - (b < p)
            nq_ = rest_q - (a >= p) - (b >= p)
            if not feasible(mixed + is_mixed, np_, nq_):
                continue
            chosen.append((a, b))
            yield from rec(rem[1:idx] + rem[idx + 1:], mixed + is_mixed, np_, nq_)
            chosen.pop()

    yield from rec(list(range(n)), 0, p, q)


# ---------------------------------------------------------------------------
# cycle distributions
# ---------------------------------------------------------------------------

class CycleDistribution:
    """
    Exact map ``k -> count`` of objects with ``k`` cycles.

    Read as a polynomial, the distribution is ``sum_k count_k x^k``.  Merging
    with ``+`` is associative and commutative, which is what lets enumeration
    shards be combined in any order.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[int, int] | None = None):
        clean = {}
        for k, c in (counts or {}).items():
            k, c = int(k), int(c)
            if k < 1:
                raise ValueError(f"cycle count must be >= 1, got {k}")
            if c < 0:
                raise ValueError(f"negative count {c} at k={k}")
            if c:
                clean[k] = c
        self._counts = dict(sorted(clean.items()))

    @property
    def counts(self) -> dict[int, int]:
        return dict(self._counts)

    def __getitem__(self, k: int) -> int:
        return self._counts.get(k, 0)

    def items(self):
        return self._counts.items()

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    @property
    def degree(self) -> int:
        return max(self._counts, default=0)

    def evaluate(self, x: int) -> int:
        return sum(c * x ** k for k, c in self._counts.items())

    def __add__(self, other: CycleDistribution) -> CycleDistribution:
        if not isinstance(other, CycleDistribution):
            return NotImplemented
        merged = dict(self._counts)
        for k, c in other._counts.items():
            merged[k] = merged.get(k, 0) + c
        return CycleDistribution(merged)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycleDistribution):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return self._counts == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._counts.items()))

    def __repr__(self) -> str:
        return f"CycleDistribution({self._counts})"
