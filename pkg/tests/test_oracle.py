import math

import pytest

from annular.combinat import pairing_count
from annular.oracle import (CeilingExceeded, OracleJob, brute_distribution,
                            brute_distribution_literal, brute_distributions_by_s,
                            brute_rooted_maps, brute_series_values, thread_count)
from annular.series import SeriesSpec, class_size, forward_differences, main_series, to_monomial


@pytest.mark.parametrize("p, q, s, expected", [
    (1, 1, 1, {1: 1}),
    (3, 1, 1, {2: 3}),
    (4, 0, None, {3: 2, 1: 1}),
    (2, 2, 2, {2: 2}),
])
def test_brute_distribution_examples(p, q, s, expected):
    assert brute_distribution(OracleJob(p, q, s)) == expected


@pytest.mark.parametrize("p, q, s, xs, expected", [
    (1, 1, 1, [0, 1, 2], [0, 1, 2]),
    (2, 2, 2, [0, 1, 2], [0, 2, 8]),
])
def test_series_values(p, q, s, xs, expected):
    assert brute_series_values(OracleJob(p, q, s), xs) == expected


@pytest.mark.parametrize("p, q, s", [(3, 1, 1), (4, 2, 2), (5, 3, 3), (4, 4, 2), (6, 2, 2)])
def test_differences_are_nonnegative(p, q, s):
    n = (p + q) // 2
    b = forward_differences(brute_series_values(OracleJob(p, q, s), range(n + 2)))
    assert b[0] == 0 and all(c >= 0 for c in b)


@pytest.mark.parametrize("p, q", [(4, 0), (6, 0), (3, 1), (2, 4), (5, 3), (4, 4)])
def test_fast_kernel_matches_literal_products(p, q):
    fast = brute_distribution(OracleJob(p, q))
    assert fast == brute_distribution_literal(p, q)
    assert fast == brute_distribution_literal(p, q, conjugate=True)


@pytest.mark.parametrize("p, q", [(3, 3), (4, 6), (5, 5)])
def test_all_s_at_once(p, q):
    by_s = brute_distributions_by_s(p, q)
    for s, dist in by_s.items():
        assert dist.total == pairing_count(p, q, s)
        assert dist == brute_distribution_literal(p, q, s)
    assert sum(d.total for d in by_s.values()) == pairing_count(p, q)


def test_ceiling():
    with pytest.raises(CeilingExceeded):
        OracleJob(10, 10)
    assert OracleJob(10, 10, ceiling=20).p == 10


def test_parallel_split_is_deterministic():
    progress = []
    serial = brute_distributions_by_s(5, 5, threads=1, progress=lambda d, t: progress.append(d))
    parallel = brute_distributions_by_s(5, 5, threads=2)
    assert serial == parallel == brute_distributions_by_s(5, 5)
    assert progress == sorted(progress) and progress[-1] == 9


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("ANNULAR_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("ANNULAR_THREADS", "x")
    with pytest.raises(ValueError):
        thread_count()


@pytest.mark.parametrize("p, q, s, expected", [
    (1, 1, 1, {0: 1}),
    (2, 2, 2, {0: 1}),
    (3, 1, 1, {0: 4}),
])
def test_rooted_maps_small(p, q, s, expected):
    assert brute_rooted_maps(p, q, s) == expected


@pytest.mark.parametrize("p, q, s", [(3, 1, 1), (4, 2, 2), (3, 3, 1), (3, 3, 3), (5, 3, 1), (4, 4, 2)])
def test_rooted_maps_scale_back_to_pairings(p, q, s):
    maps = brute_rooted_maps(p, q, s)
    n = (p + q) // 2
    size = class_size(p, q)
    scaled = sum(maps.values()) * math.factorial(2 * n - 1)
    assert scaled % size == 0
    assert scaled // size == pairing_count(p, q, s)
    mono = to_monomial(main_series(SeriesSpec(p, q, s)))
    assert maps[0] * math.factorial(2 * n - 1) == mono[n] * size


def test_rooted_maps_rejects_bad_input():
    with pytest.raises(ValueError):
        brute_rooted_maps(2, 2, 0)
    with pytest.raises(CeilingExceeded):
        brute_rooted_maps(8, 6, 2)
