"""
Acceptance gate: one test per criterion, each printing a PASS/FAIL line with
its runtime before asserting.  Run with ``pytest tests/test_acceptance.py -s``
or plain ``pytest`` (the lines are printed outside output capture).
"""
import random
import time

import pytest

from annular import oracle
from annular.arrays import (from_paired_surjection, label_recovery, random_paired_surjection,
                            validate)
from annular.oracle import OracleJob, brute_distribution, brute_distributions_by_s
from annular.reductions import PartialPairing, is_minimal, xi, xi_inverse, zeta, zeta_inverse
from annular.series import (SeriesSpec, c_via_reduction, forward_differences, gs_series,
                            hz_series, iter_specs, jackson_series, main_series,
                            planar_coefficient, sum_over_s, to_monomial)
from annular.verify import (_recovery_cases, _vertical_cases, _xi_cases, _zeta_cases,
                            fca_cases, worked_example)


@pytest.fixture
def announce(capsys):
    def emit(number, title, ok, seconds, budget, detail=""):
        within = budget is None or seconds <= budget
        status = "PASS" if ok and within else "FAIL"
        limit = f" (budget {budget:.0f}s)" if budget is not None else ""
        extra = f" [{detail}]" if detail else ""
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {title}: {seconds:.1f}s{limit}{extra}")
        assert ok, detail or title
        assert within, f"criterion {number} took {seconds:.1f}s, budget {budget}s"
    return emit


@pytest.fixture(autouse=True)
def cold_oracle():
    oracle._cached_tally.cache_clear()
    yield


def two_row_sizes(max_total):
    for total in range(2, max_total + 1, 2):
        for p in range(1, total):
            yield p, total - p


def collect(cases):
    total, bad = 0, []
    for label, ok in cases:
        total += 1
        if not ok:
            bad.append(label)
    return total, bad


def test_criterion_1_one_vertex(announce):
    start = time.perf_counter()
    bad = [p for p in range(2, 17, 2)
           if brute_distribution(OracleJob(p, 0)) != hz_series(p).distribution()]
    announce(1, "one-vertex series equals brute force for even p <= 16",
             not bad, time.perf_counter() - start, 30, f"mismatch at p={bad}" if bad else "")


def test_criterion_2_two_vertex(announce):
    start = time.perf_counter()
    bad, count = [], 0
    for p, q in two_row_sizes(16):
        by_s = brute_distributions_by_s(p, q)
        for s in SeriesSpec(p, q).mixed_values():
            count += 1
            if main_series(SeriesSpec(p, q, s)).distribution() != by_s.get(s):
                bad.append((p, q, s))
    announce(2, f"two-vertex series equals brute force on {count} specs with p+q <= 16",
             not bad, time.perf_counter() - start, 300, f"mismatch at {bad[:5]}" if bad else "")


def test_criterion_3_cross_formula(announce):
    start = time.perf_counter()
    bad = [(p, q) for p, q in two_row_sizes(24) if sum_over_s(p, q) != gs_series(p, q)]
    bad += [(n, n, "jackson") for n in range(1, 13) if gs_series(n, n) != jackson_series(n)]
    announce(3, "sum over s equals the summed closed form (p+q <= 24); diagonal matches (n <= 12)",
             not bad, time.perf_counter() - start, 10, f"mismatch at {bad[:5]}" if bad else "")


def test_criterion_4_structural_zeros(announce):
    start = time.perf_counter()
    bad = []
    specs = iter_specs(24)
    for spec in specs:
        b = main_series(spec)
        mono = to_monomial(b)
        n = spec.n
        if b[n + 1] != 0:
            bad.append((spec, "top"))
        if any((k - n) % 2 for k, c in mono.coeffs.items() if c):
            bad.append((spec, "parity"))
        if mono[n] != planar_coefficient(spec):
            bad.append((spec, "planar"))
    announce(4, f"top coefficient, parity zeros and planar term on {len(specs)} specs",
             not bad, time.perf_counter() - start, None, f"{bad[:5]}" if bad else "")


def test_criterion_5_forest_completion(announce):
    start = time.perf_counter()
    total, bad = collect(fca_cases(6))
    announce(5, f"completion algorithm bijective on every forest with k <= 6 ({total} cases)",
             not bad, time.perf_counter() - start, 120, f"{bad[:3]}" if bad else "")


def test_criterion_6_reduction_chain(announce):
    start = time.perf_counter()
    bad, count = [], 0
    for p, q in two_row_sizes(12):
        by_s = brute_distributions_by_s(p, q)
        for s in SeriesSpec(p, q).mixed_values():
            spec = SeriesSpec(p, q, s)
            b = forward_differences([by_s[s].evaluate(x) for x in range(spec.n + 2)])
            for k in range(1, spec.n + 2):
                count += 1
                if b[k] != c_via_reduction(spec, k):
                    bad.append((p, q, s, k))
    announce(6, f"differences of brute series equal the reduction count ({count} values)",
             not bad, time.perf_counter() - start, 60, f"{bad[:5]}" if bad else "")


def random_reduction_roundtrips(rng, samples, max_total):
    failures = []
    for _ in range(samples):
        total = rng.randrange(2, max_total + 1, 2)
        p = rng.randint(1, total - 1)
        ps = random_paired_surjection(rng, p, total - p)
        array = from_paired_surjection(ps)
        ok = validate(array).ok and label_recovery(array) == ps
        first = xi(array)
        ok &= xi_inverse(first.mu_top, first.mu_bottom, first.minimal) == array
        second = zeta(first.minimal)
        ok &= zeta_inverse(second.kappa_top, second.kappa_bottom, second.vertical) == first.minimal
        # and from a random triple back again
        beta = second.vertical
        i, j = len(beta.marks_top) - 1, len(beta.marks_bottom) - 1
        kt = tuple(rng.sample(range(1, beta.p + 2 * i + 1), i))
        kb = tuple(rng.sample(range(1, beta.q + 2 * j + 1), j))
        minimal = zeta_inverse(kt, kb, beta)
        back = zeta(minimal)
        ok &= is_minimal(minimal) and (back.kappa_top, back.kappa_bottom, back.vertical) == (kt, kb, beta)
        extra = rng.randint(0, 2)
        pts = rng.sample(range(1, minimal.p + 2 * extra + 1), 2 * extra)
        mu_top = PartialPairing(tuple(zip(pts[::2], pts[1::2])))
        full = xi_inverse(mu_top, PartialPairing(()), minimal)
        ok &= xi(full).mu_top == mu_top and xi(full).minimal == minimal
        if not ok:
            failures.append(ps)
    return failures


def test_criterion_7_array_oracles(announce):
    start = time.perf_counter()
    parts = {
        "vertical counts": collect(_vertical_cases()),
        "xi exhaustive": collect(_xi_cases(8)),
        "zeta exhaustive": collect(_zeta_cases(8)),
        "label recovery": collect(_recovery_cases(6)),
    }
    random_failures = random_reduction_roundtrips(random.Random(20240607), 400, 14)
    bad = {name: failures[:2] for name, (_, failures) in parts.items() if failures}
    if random_failures:
        bad["random"] = random_failures[:2]
    summary = ", ".join(f"{name} {n}" for name, (n, _) in parts.items()) + ", random 400"
    announce(7, "vertical counts, reductions and label recovery against enumeration",
             not bad, time.perf_counter() - start, None, str(bad) if bad else summary)


def test_criterion_8_worked_example(announce):
    start = time.perf_counter()
    ps = worked_example()
    array = from_paired_surjection(ps)
    image = xi(array)
    checks = {
        "valid": validate(array).ok,
        "recovery": label_recovery(array) == ps,
        "top": image.mu_top.pairs == ((2, 11), (4, 7)),
        "bottom": image.mu_bottom.pairs == ((1, 3),),
    }
    failed = [name for name, ok in checks.items() if not ok]
    announce(8, "worked example validates, round-trips, and strips the printed redundant pairs",
             not failed, time.perf_counter() - start, None, f"failed: {failed}" if failed else "")
