import itertools

import pytest
from hypothesis import given, strategies as st

from annular.forests import (CompletionInput, ForestError, RootedForest, completion_tuples,
                             count_completions, enumerate_forests, enumerate_superforests,
                             fca_forward, fca_inverse)


@pytest.mark.parametrize("k", range(1, 6))
def test_forest_count_is_cayley(k):
    forests = list(enumerate_forests(k))
    assert len(forests) == len(set(forests)) == (k + 1) ** (k - 1)


def test_forest_rejects_cycles():
    with pytest.raises(ForestError):
        RootedForest((2, 1))
    with pytest.raises(ForestError):
        RootedForest((1,))
    with pytest.raises(ForestError):
        RootedForest.from_arcs(3, [(1, 2), (1, 3)])


def test_forest_queries():
    f = RootedForest.from_arcs(5, {1: 2, 2: 3, 4: 3})
    assert f.roots == (3, 5)
    assert f.root_of(1) == 3
    assert f.path_to_root(1) == (1, 2, 3)
    assert f.component(3) == {1, 2, 3, 4}
    assert f.contains(RootedForest.from_arcs(5, {4: 3}))
    assert f.without_arcs([2]).roots == (2, 3, 5)


def test_three_vertex_example():
    # tuple (1, 3): the first entry lies in the tree of r_1 = 1, so it is swapped to the end
    base = RootedForest.edgeless(3)
    res = fca_forward(CompletionInput(base, (1, 2), (1, 3)))
    assert res.forest.parents == (3, 1, 0)
    assert res.fcp == (2, 1)
    inv = fca_inverse(res.forest, [(2, 1), (1, 3)])
    assert inv.a == (1, 3) and inv.fcp == (2, 1) and inv.base == base


def test_two_vertex_example():
    base = RootedForest.edgeless(2)
    results = {fca_forward(CompletionInput(base, (1,), (a,))).forest.parents for a in (2,)}
    assert results == {(2, 0)}
    assert count_completions(base, (1,)) == 1


@pytest.mark.parametrize("eliminated, a", [((), ()), ((1, 2, 3), (1, 1, 1)), ((2, 1), (3, 3)),
                                           ((1,), (1,)), ((1, 2), (3,))])
def test_completion_input_validation(eliminated, a):
    with pytest.raises(ForestError):
        CompletionInput(RootedForest.edgeless(3), eliminated, a)


def test_inverse_rejects_missing_arc():
    f = RootedForest.from_arcs(3, {1: 2})
    with pytest.raises(ForestError):
        fca_inverse(f, [(1, 3)])
    with pytest.raises(ForestError):
        fca_inverse(f, [(2, 1)])


@pytest.mark.parametrize("k", range(1, 5))
def test_bijection_exhaustive_small(k):
    for base in enumerate_forests(k):
        for m in range(1, len(base.roots)):
            for elim in itertools.combinations(base.roots, m):
                surviving = [r for r in base.roots if r not in elim]
                targets = set(enumerate_superforests(base, surviving))
                images = set()
                for a in completion_tuples(base, elim):
                    res = fca_forward(CompletionInput(base, elim, a), check_stages=True)
                    images.add(res.forest)
                    inv = fca_inverse(res.forest, [(r, res.forest.parents[r - 1]) for r in elim],
                                      check_stages=True)
                    assert (inv.a, inv.fcp, inv.base) == (a, res.fcp, base)
                assert images == targets
                assert len(images) == count_completions(base, elim)


@st.composite
def completion_inputs(draw):
    k = draw(st.integers(2, 9))
    parents = [0] * k
    for v in draw(st.permutations(range(1, k + 1))):
        # attach v to something already rooted elsewhere, or keep it a root
        if draw(st.booleans()):
            target = draw(st.integers(1, k))
            trial = list(parents)
            trial[v - 1] = target
            try:
                RootedForest(tuple(trial))
            except ForestError:
                continue
            parents = trial
    base = RootedForest(tuple(parents))
    roots = base.roots
    if len(roots) < 2:
        base = RootedForest((0,) * k)
        roots = base.roots
    m = draw(st.integers(1, len(roots) - 1))
    elim = tuple(sorted(draw(st.lists(st.sampled_from(roots), min_size=m, max_size=m, unique=True))))
    safe = [v for v in range(1, k + 1) if base.root_of(v) not in elim]
    head = draw(st.lists(st.integers(1, k), min_size=m - 1, max_size=m - 1))
    return CompletionInput(base, elim, tuple(head) + (draw(st.sampled_from(safe)),))


@given(completion_inputs())
def test_roundtrip_random(inp):
    res = fca_forward(inp, check_stages=True)
    assert res.forest.contains(inp.base)
    assert set(res.forest.roots) == set(inp.surviving)
    inv = fca_inverse(res.forest, [(r, res.forest.parents[r - 1]) for r in inp.eliminated])
    assert inv.a == inp.a
    assert inv.fcp == res.fcp
    assert inv.base == inp.base
