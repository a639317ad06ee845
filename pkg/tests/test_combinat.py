import itertools
import math

import pytest
from hypothesis import given, strategies as st

from annular.combinat import (CycleDistribution, GroundSet, Pairing, Permutation, binom,
                              compose, cycle_count, double_factorial, enumerate_pairings,
                              falling_factorial, gamma, inverse, pairing_count)


@pytest.mark.parametrize("n, k, expected", [(5, 2, 10), (5, 0, 1), (5, 6, 0), (5, -1, 0), (0, 0, 1)])
def test_binom(n, k, expected):
    assert binom(n, k) == expected


@pytest.mark.parametrize("m", [0, 4, -3])
def test_double_factorial_rejects_even_or_small(m):
    with pytest.raises(ValueError):
        double_factorial(m)


def test_binom_rejects_negative_top():
    with pytest.raises(ValueError):
        binom(-1, 0)


@pytest.mark.parametrize("m, expected", [(-1, 1), (1, 1), (5, 15), (7, 105), (15, 2027025)])
def test_double_factorial(m, expected):
    assert double_factorial(m) == expected


@pytest.mark.parametrize("x, i, expected", [(5, 0, 1), (5, 2, 20), (3, 4, 0), (7, 7, 5040)])
def test_falling_factorial(x, i, expected):
    assert falling_factorial(x, i) == expected


def test_ground_set_labels():
    g = GroundSet(3, 2)
    assert [g.label(i) for i in range(5)] == ["1", "2", "3", "1'", "2'"]
    assert g.index("2'") == 4 and g.index(3) == 2
    with pytest.raises(ValueError):
        g.index("4")
    with pytest.raises(ValueError):
        g.index("3'")


def test_gamma_cycles():
    assert gamma(3, 2).cycle_labels() == [("1", "2", "3"), ("1'", "2'")]
    assert gamma(4).cycle_labels() == [("1", "2", "3", "4")]


def test_compose_applies_right_factor_first():
    g = GroundSet(3, 0)
    f = Permutation.from_cycles(g, [(1, 2)])
    h = Permutation.from_cycles(g, [(2, 3)])
    # f(h(2)) = f(3) = 3
    assert compose(f, h)(g.index(2)) == g.index(3)


@given(st.permutations(list(range(7))))
def test_inverse_roundtrip(images):
    f = Permutation(GroundSet(4, 3), tuple(images))
    assert compose(f, inverse(f)) == Permutation.identity(f.ground)
    assert cycle_count(f) == len(f.cycles())


@pytest.mark.parametrize("p, q", [(4, 0), (3, 1), (2, 2), (5, 3), (4, 4)])
def test_pairing_enumeration_matches_count(p, q):
    seen = set(enumerate_pairings(p, q))
    assert len(seen) == pairing_count(p, q) == double_factorial(p + q - 1)
    for pairing in seen:
        assert pairing.as_permutation().is_involution()
        assert not pairing.as_permutation().fixed_points()


@pytest.mark.parametrize("p, q, s", [(3, 1, 1), (4, 2, 2), (5, 3, 1), (5, 3, 3), (4, 4, 2), (6, 4, 4)])
def test_filtered_pairing_count(p, q, s):
    pairings = list(enumerate_pairings(p, q, s))
    assert all(m.mixed_count == s for m in pairings)
    expected = (math.comb(p, s) * math.comb(q, s) * math.factorial(s)
                * double_factorial(p - s - 1) * double_factorial(q - s - 1))
    assert len(pairings) == pairing_count(p, q, s) == expected


@pytest.mark.parametrize("p, q, s", [(2, 3, 1), (3, 3, 2), (2, 2, 4)])
def test_infeasible_mixed_count(p, q, s):
    with pytest.raises(ValueError):
        pairing_count(p, q, s)


def test_mixed_counts_partition_all_pairings():
    total = sum(pairing_count(4, 4, s) for s in (0, 2, 4))
    assert total == pairing_count(4, 4)


def test_pairing_from_labels():
    mu = Pairing.from_labels(3, 1, [("1", "2"), ("3", "1'")])
    assert mu.mixed_count == 1
    assert sorted(mu.label_pairs()) == [("1", "2"), ("3", "1'")]


@pytest.mark.parametrize("pairs", [[("1", "2")], [("1", "2"), ("2", "3")]])
def test_pairing_rejects_bad_input(pairs):
    with pytest.raises(ValueError):
        Pairing.from_labels(3, 1, pairs)


def test_cycle_distribution_algebra():
    a = CycleDistribution({1: 2, 3: 1})
    b = CycleDistribution({3: 4, 5: 1})
    total = a + b
    assert total.counts == {1: 2, 3: 5, 5: 1}
    assert total.total == 8
    assert total.degree == 5
    assert total.evaluate(2) == 2 * 2 + 5 * 8 + 32
    assert a == {1: 2, 3: 1}
    assert CycleDistribution({2: 0}) == CycleDistribution()


@given(st.dictionaries(st.integers(1, 10), st.integers(0, 50), max_size=5),
       st.dictionaries(st.integers(1, 10), st.integers(0, 50), max_size=5))
def test_cycle_distribution_merge_is_commutative(x, y):
    a, b = CycleDistribution(x), CycleDistribution(y)
    assert a + b == b + a
    assert (a + b).total == a.total + b.total


def test_product_example_by_hand():
    # gamma^{-1}: 1->3, 2->1, 3->2, 1'->1'; then mu: 1->2, 2->1', 1'->1, 3->3
    mu = Pairing.from_labels(3, 1, [("1", "1'"), ("2", "3")])
    prod = compose(mu.as_permutation(), inverse(gamma(3, 1)))
    assert prod.cycle_labels() == [("1", "2", "1'"), ("3",)]
    assert cycle_count(prod) == 2


def test_pairings_are_distinct_and_sorted():
    pairings = list(enumerate_pairings(2, 2))
    assert len(set(pairings)) == len(pairings) == 3
    for m in pairings:
        assert all(a < b for a, b in m.pairs)
        assert list(m.pairs) == sorted(m.pairs)
    assert set(itertools.chain.from_iterable(pairings[0].pairs)) == {0, 1, 2, 3}
