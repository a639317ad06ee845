"""
Rooted forests and the Forest Completion Algorithm.

A rooted forest on ``[k]`` is stored as a parent tuple: ``parents[v - 1]`` is
the vertex that ``v`` points to, or ``0`` when ``v`` is a root.  All arcs
point rootward.

Given a base forest whose roots split into eliminated roots ``r_1 < ... <
r_m`` and surviving roots ``s_1 < ... < s_n``, the completion algorithm maps
each tuple in ``[k]^(m-1) x S`` (``S`` the vertices of the surviving trees)
to a forest rooted at the surviving roots that contains the base, and
records which tuple entry each new arc consumed.  :func:`fca_inverse`
undoes it stage by stage.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "RootedForest",
    "CompletionInput",
    "CompletionResult",
    "InverseCompletion",
    "fca_forward",
    "fca_inverse",
    "count_completions",
    "enumerate_superforests",
    "enumerate_forests",
    "completion_tuples",
]


class ForestError(ValueError):
    pass


def _root_of(parents: Sequence[int], v: int) -> int:
    while parents[v - 1]:
        v = parents[v - 1]
    return v


@dataclass(frozen=True)
class RootedForest:
    parents: tuple[int, ...]

    def __post_init__(self):
        k = len(self.parents)
        object.__setattr__(self, "parents", tuple(int(x) for x in self.parents))
        for v, par in enumerate(self.parents, 1):
            if not 0 <= par <= k or par == v:
                raise ForestError(f"vertex {v} has invalid parent {par}")
        # every walk must reach a root within k steps
        for v in range(1, k + 1):
            x, steps = v, 0
            while self.parents[x - 1]:
                x = self.parents[x - 1]
                steps += 1
                if steps > k:
                    raise ForestError(f"parent map {self.parents} has a cycle through {v}")

    @classmethod
    def from_arcs(cls, k: int, arcs: Mapping[int, int] | Sequence[tuple[int, int]]) -> RootedForest:
        parents = [0] * k
        items = arcs.items() if isinstance(arcs, Mapping) else arcs
        for v, w in items:
            if parents[v - 1]:
                raise ForestError(f"vertex {v} has two outgoing arcs")
            parents[v - 1] = w
        return cls(tuple(parents))

    @classmethod
    def edgeless(cls, k: int) -> RootedForest:
        return cls((0,) * k)

    @property
    def k(self) -> int:
        return len(self.parents)

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v, par in enumerate(self.parents, 1) if not par)

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, par) for v, par in enumerate(self.parents, 1) if par)

    def parent(self, v: int) -> int | None:
        return self.parents[v - 1] or None

    def root_of(self, v: int) -> int:
        return _root_of(self.parents, v)

    def component(self, root: int) -> frozenset[int]:
        return frozenset(v for v in range(1, self.k + 1) if _root_of(self.parents, v) == root)

    def path_to_root(self, v: int) -> tuple[int, ...]:
        out = [v]
        while self.parents[out[-1] - 1]:
            out.append(self.parents[out[-1] - 1])
        return tuple(out)

    def contains(self, other: RootedForest) -> bool:
        return other.k == self.k and all(
            not b or a == b for a, b in zip(self.parents, other.parents))

    def without_arcs(self, tails: Sequence[int]) -> RootedForest:
        parents = list(self.parents)
        for v in tails:
            parents[v - 1] = 0
        return RootedForest(tuple(parents))


@dataclass(frozen=True)
class CompletionInput:
    """Base forest, its eliminated roots (the rest survive) and the tuple ``a``."""

    base: RootedForest
    eliminated: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        roots = set(self.base.roots)
        elim = tuple(self.eliminated)
        if list(elim) != sorted(set(elim)):
            raise ForestError(f"eliminated roots {elim} must be strictly increasing")
        if not set(elim) <= roots:
            raise ForestError(f"{sorted(set(elim) - roots)} are not roots of the base forest")
        if not elim:
            raise ForestError("at least one root must be eliminated")
        if len(elim) == len(roots):
            raise ForestError("at least one root must survive")
        if len(self.a) != len(elim):
            raise ForestError(f"tuple {self.a} must have length m = {len(elim)}")
        if any(not 1 <= x <= self.base.k for x in self.a):
            raise ForestError(f"tuple {self.a} has entries outside [{self.base.k}]")
        if _root_of(self.base.parents, self.a[-1]) in elim:
            raise ForestError(f"last entry {self.a[-1]} is not in a surviving tree")

    @property
    def m(self) -> int:
        return len(self.eliminated)

    @property
    def surviving(self) -> tuple[int, ...]:
        elim = set(self.eliminated)
        return tuple(r for r in self.base.roots if r not in elim)

    @property
    def n(self) -> int:
        return len(self.surviving)


@dataclass(frozen=True)
class CompletionResult:
    forest: RootedForest
    fcp: tuple[int, ...]


class InverseCompletion(NamedTuple):
    a: tuple[int, ...]
    sigma: tuple[int, ...]
    base: RootedForest

    @property
    def fcp(self) -> tuple[int, ...]:
        return _invert(self.sigma)


def _invert(perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, x in enumerate(perm, 1):
        out[x - 1] = i
    return tuple(out)


def fca_forward(inp: CompletionInput, *, check_stages: bool = False) -> CompletionResult:
    """
    Run the completion stages ``1 .. m``.

    At stage ``i`` an arc leaves ``r_i``: towards ``b_i`` when ``b_i`` lies in
    another component, otherwise towards ``b_m`` after swapping positions
    ``i`` and ``m`` of both ``b`` and ``pi``.
    """
    parents = list(inp.base.parents)
    elim = inp.eliminated
    m = len(elim)
    b = list(inp.a)
    pi = list(range(1, m + 1))
    for i in range(m):
        r = elim[i]
        if _root_of(parents, b[i]) == r:
            b[i], b[m - 1] = b[m - 1], b[i]
            pi[i], pi[m - 1] = pi[m - 1], pi[i]
        parents[r - 1] = b[i]
        if check_stages:
            _check_stage(parents, elim[i + 1:], inp.surviving, b[m - 1])
    forest = RootedForest(tuple(parents))
    return CompletionResult(forest, tuple(pi))


def _check_stage(parents, pending, surviving, last) -> None:
    forest = RootedForest(tuple(parents))
    expected = sorted(tuple(pending) + tuple(surviving))
    if sorted(forest.roots) != expected:
        raise AssertionError(f"stage roots {forest.roots} != {expected}")
    if forest.root_of(last) not in surviving:
        raise AssertionError(f"b_m = {last} is not safe after this stage")


def fca_inverse(forest: RootedForest, removals: Sequence[tuple[int, int]], *,
                check_stages: bool = False) -> InverseCompletion:
    """
    Remove the arcs ``(r_i, c_i)`` and recover the tuple and permutation.

    ``removals`` may come in any order; they are processed with ``r_1 < ... <
    r_m``.  Returns ``(a, sigma, base)`` where ``fca_forward`` on ``base`` and
    ``a`` gives back ``forest`` with completion permutation ``sigma^{-1}``.
    """
    rem = sorted(removals)
    elim = tuple(r for r, _ in rem)
    if len(set(elim)) != len(elim):
        raise ForestError(f"removal tails {elim} are not distinct")
    for r, c in rem:
        if forest.parents[r - 1] == 0:
            raise ForestError(f"{r} is a root of the forest")
        if forest.parents[r - 1] != c:
            raise ForestError(f"({r}, {c}) is not an arc of the forest")
    surviving = set(forest.roots)
    parents = list(forest.parents)
    m = len(rem)
    b = [c for _, c in rem]
    sigma = list(range(1, m + 1))
    for i in range(m - 1, -1, -1):
        r = elim[i]
        if check_stages and parents[r - 1] != b[i]:
            raise AssertionError(f"stage {i}: arc out of {r} is not ({r}, {b[i]})")
        parents[r - 1] = 0
        if _root_of(parents, b[m - 1]) not in surviving:
            b[i], b[m - 1] = b[m - 1], b[i]
            sigma[i], sigma[m - 1] = sigma[m - 1], sigma[i]
    return InverseCompletion(tuple(b), tuple(sigma), RootedForest(tuple(parents)))


def count_completions(base: RootedForest, eliminated: Sequence[int]) -> int:
    """``k^(m-1) |S|``: forests rooted at the surviving roots that contain ``base``."""
    elim = set(eliminated)
    m = len(elim)
    if m < 1 or not elim <= set(base.roots) or len(elim) == len(base.roots):
        raise ForestError(f"invalid root split {sorted(elim)} of {base.roots}")
    safe = sum(1 for v in range(1, base.k + 1) if base.root_of(v) not in elim)
    return base.k ** (m - 1) * safe


def completion_tuples(base: RootedForest, eliminated: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every tuple in ``[k]^(m-1) x S``."""
    elim = set(eliminated)
    safe = [v for v in range(1, base.k + 1) if base.root_of(v) not in elim]
    for head in itertools.product(range(1, base.k + 1), repeat=len(elim) - 1):
        for last in safe:
            yield head + (last,)


def enumerate_superforests(base: RootedForest, target_roots) -> Iterator[RootedForest]:
    """
    Every forest on ``[k]`` with root set ``target_roots`` containing ``base``.

    Plain backtracking over parents for the roots that must disappear; meant
    for small ``k`` only.
    """
    targets = set(target_roots)
    if not targets <= set(base.roots):
        raise ForestError(f"target roots {sorted(targets)} are not all roots of the base")
    todo = [r for r in base.roots if r not in targets]
    parents = list(base.parents)
    k = base.k

    def rec(idx: int) -> Iterator[RootedForest]:
        if idx == len(todo):
            yield RootedForest(tuple(parents))
            return
        r = todo[idx]
        for w in range(1, k + 1):
            x = w
            while x != r and parents[x - 1]:
                x = parents[x - 1]
            if x == r:
                continue
            parents[r - 1] = w
            yield from rec(idx + 1)
        parents[r - 1] = 0

    yield from rec(0)


def enumerate_forests(k: int) -> Iterator[RootedForest]:
    """All ``(k+1)^(k-1)`` rooted forests on ``[k]``."""
    parents = [0] * k

    def acyclic_from(v: int) -> bool:
        x, steps = v, 0
        while parents[x - 1]:
            x = parents[x - 1]
            steps += 1
            if steps > k:
                return False
        return True

    def rec(v: int) -> Iterator[RootedForest]:
        if v > k:
            if all(acyclic_from(u) for u in range(1, k + 1)):
                yield RootedForest(tuple(parents))
            return
        for w in range(k + 1):
            if w == v:
                continue
            parents[v - 1] = w
            yield from rec(v + 1)
        parents[v - 1] = 0

    yield from rec(1)
