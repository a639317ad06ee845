"""
Verification suites: every closed form against brute force, every bijection
against exhaustive enumeration, and the completion algorithm against
superforest enumeration.

Each check names the identity it tests, so a failing report says which
relationship broke rather than just that something did.  Closed forms are
looked up on :mod:`annular.series` at call time, which lets the self-test
swap in a broken ``delta`` and watch the suite catch it.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from collections import Counter
from collections.abc import Callable, Iterable, Iterator
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from . import series
from .arrays import (PairedSurjection, enumerate_canonical_arrays, enumerate_paired_surjections,
                     from_paired_surjection, label_recovery, validate)
from .combinat import binom, double_factorial, falling_factorial
from .forests import (RootedForest, count_completions, completion_tuples, enumerate_forests,
                      enumerate_superforests, fca_forward, fca_inverse, CompletionInput)
from .oracle import brute_distribution, brute_distributions_by_s, brute_rooted_maps, OracleJob
from .reductions import is_minimal, xi, xi_inverse, zeta, zeta_inverse
from .vertical import enumerate_vertical_arrays, profile

__all__ = ["Check", "Report", "SUITES", "run_suite", "worked_example"]

MAX_FAILURES_KEPT = 5
ROOTED_MAP_TOTAL = 10
REDUCTION_TOTAL = 12
ARRAY_TOTAL = 8
RECOVERY_TOTAL = 6
ARRAY_COLUMNS = 3
FOREST_SIZE = 6


@dataclass
class Check:
    name: str
    identity: str
    passed: bool = True
    cases: int = 0
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)


@dataclass
class Report:
    suite: str
    max_n: int
    checks: list[Check]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "max_n": self.max_n, "passed": self.passed,
                "seconds": round(self.seconds, 3),
                "checks": [asdict(c) | {"seconds": round(c.seconds, 3)} for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


Case = tuple[str, bool]


def _check(name: str, identity: str, cases: Callable[[], Iterable[Case]]) -> Check:
    out = Check(name, identity)
    start = time.perf_counter()
    try:
        for label, ok in cases():
            out.cases += 1
            if not ok:
                out.passed = False
                if len(out.failures) < MAX_FAILURES_KEPT:
                    out.failures.append(label)
    except Exception as exc:  # a crash inside a check is a failure of that identity
        out.passed = False
        out.failures.append(f"{type(exc).__name__}: {exc}")
    out.seconds = time.perf_counter() - start
    return out


def _two_row_sizes(max_total: int) -> Iterator[tuple[int, int]]:
    for total in range(2, max_total + 1, 2):
        for p in range(1, total):
            yield p, total - p


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------

def _hz_cases(max_n: int) -> Iterator[Case]:
    for p in range(2, 2 * max_n + 1, 2):
        brute = brute_distribution(OracleJob(p, 0))
        yield f"p={p}", series.hz_series(p).distribution() == brute


def _main_cases(max_n: int) -> Iterator[Case]:
    for p, q in _two_row_sizes(2 * max_n):
        by_s = brute_distributions_by_s(p, q)
        for s in series.SeriesSpec(p, q).mixed_values():
            spec = series.SeriesSpec(p, q, s)
            got = series.main_series(spec).distribution()
            yield f"p={p} q={q} s={s}: formula {got.counts} brute {by_s.get(s)}", got == by_s.get(s)


def _sum_cases(max_n: int) -> Iterator[Case]:
    for p, q in _two_row_sizes(2 * max_n):
        yield f"p={p} q={q}", series.sum_over_s(p, q) == series.gs_series(p, q)


def _jackson_cases(max_n: int) -> Iterator[Case]:
    for n in range(1, max_n + 1):
        yield f"n={n}", series.gs_series(n, n) == series.jackson_series(n)


def _structure_cases(max_n: int) -> Iterator[Case]:
    for spec in series.iter_specs(2 * max_n):
        b = series.main_series(spec)
        mono = series.to_monomial(b)
        n = spec.n
        label = f"p={spec.p} q={spec.q} s={spec.s}"
        yield f"{label}: top coefficient", b[n + 1] == 0
        yield f"{label}: parity", all(not c or (k - n) % 2 == 0 for k, c in mono.coeffs.items())
        yield f"{label}: planar", mono[n] == series.planar_coefficient(spec)
        yield f"{label}: mass", mono.evaluate(1) == series.mixed_pairing_count(spec)
        yield f"{label}: nonnegative", all(c >= 0 for c in b.coeffs.values()) and \
            all(c >= 0 for c in mono.coeffs.values())


def _reduction_cases(max_n: int) -> Iterator[Case]:
    limit = min(2 * max_n, REDUCTION_TOTAL)
    for p, q in _two_row_sizes(limit):
        by_s = brute_distributions_by_s(p, q)
        for s in series.SeriesSpec(p, q).mixed_values():
            spec = series.SeriesSpec(p, q, s)
            dist = by_s[s]
            b = series.forward_differences([dist.evaluate(x) for x in range(spec.n + 2)])
            for k in range(1, spec.n + 2):
                yield (f"p={p} q={q} s={s} k={k}: differences {b[k]}",
                       b[k] == series.c_via_reduction(spec, k) == series.c_via_chain(spec, k))


def _rooted_map_cases(max_n: int) -> Iterator[Case]:
    limit = min(2 * max_n, ROOTED_MAP_TOTAL)
    for spec in series.iter_specs(limit):
        brute = brute_rooted_maps(spec.p, spec.q, spec.s)
        mono = series.to_monomial(series.main_series(spec))
        formula = {series.genus_of(k, spec.n, 2): series.rooted_map_count(spec, k)
                   for k, c in mono.coeffs.items() if c}
        yield f"p={spec.p} q={spec.q} s={spec.s}: formula {formula} brute {brute}", formula == brute


def formulas_suite(max_n: int) -> list[Check]:
    return [
        _check("one_vertex", "hz_series(p) == brute_distribution(p, 0)",
               lambda: _hz_cases(max_n)),
        _check("two_vertex", "main_series(p, q, s) == brute_distribution(p, q, s)",
               lambda: _main_cases(max_n)),
        _check("sum_over_s", "sum_s main_series(p, q, s) == gs_series(p, q)",
               lambda: _sum_cases(max_n)),
        _check("equal_rows", "gs_series(n, n) == jackson_series(n)",
               lambda: _jackson_cases(max_n)),
        _check("structure", "b_{n+1} == 0, parity support, planar coefficient, mass, nonnegativity",
               lambda: _structure_cases(max_n)),
        _check("reduction_chain",
               "forward differences of brute series == c_via_reduction == c_via_chain",
               lambda: _reduction_cases(max_n)),
        _check("rooted_maps", "rooted_map_count == brute_rooted_maps",
               lambda: _rooted_map_cases(max_n)),
    ]


# ---------------------------------------------------------------------------
# bijections
# ---------------------------------------------------------------------------

def worked_example() -> PairedSurjection:
    """The eleven-by-nine example with five mixed pairs and four columns."""
    pairs = [("1", "9"), ("5", "8"), ("6", "7"), ("2'", "3'"), ("7'", "8'"),
             ("2", "4'"), ("3", "1'"), ("4", "9'"), ("10", "6'"), ("11", "5'")]
    blocks = [["3", "6", "8", "2'", "4'"], ["3'", "8'"],
              ["1", "2", "5", "9", "10", "5'", "7'", "9'"], ["4", "7", "11", "1'", "6'"]]
    return PairedSurjection.from_labels(11, 9, pairs, blocks)


def _fixture_cases() -> Iterator[Case]:
    ps = worked_example()
    array = from_paired_surjection(ps)
    yield "valid", validate(array).ok
    yield "recovery", label_recovery(array) == ps
    image = xi(array)
    yield "top redundant pairs", image.mu_top.pairs == ((2, 11), (4, 7))
    yield "bottom redundant pairs", image.mu_bottom.pairs == ((1, 3),)
    yield "xi roundtrip", xi_inverse(image.mu_top, image.mu_bottom, image.minimal) == array


def _small_specs(max_total: int, columns: int):
    for p, q in _two_row_sizes(max_total):
        for s in series.SeriesSpec(p, q).mixed_values():
            for k in range(1, columns + 1):
                yield p, q, s, k


def _recovery_cases(max_total: int) -> Iterator[Case]:
    for p, q, s, k in _small_specs(max_total, ARRAY_COLUMNS):
        for ps in enumerate_paired_surjections(p, q, s, k):
            array = from_paired_surjection(ps)
            label = f"p={p} q={q} s={s} k={k} mu={ps.mu.label_pairs()} phi={ps.phi}"
            ok = array.is_full and validate(array).ok and label_recovery(array) == ps
            yield label, ok


@lru_cache(maxsize=None)
def _canonical_counts(p: int, q: int, s: int, k: int) -> tuple[int, int]:
    """(canonical arrays, minimal canonical arrays)."""
    total = minimal = 0
    for array in enumerate_canonical_arrays(p, q, s, k):
        total += 1
        minimal += is_minimal(array)
    return total, minimal


def _xi_cases(max_total: int) -> Iterator[Case]:
    for p, q, s, k in _small_specs(max_total, ARRAY_COLUMNS):
        by_removed: Counter = Counter()
        for array in enumerate_canonical_arrays(p, q, s, k):
            image = xi(array)
            beta = image.minimal
            by_removed[(len(image.mu_top), len(image.mu_bottom))] += 1
            ok = (xi_inverse(image.mu_top, image.mu_bottom, beta) == array
                  and is_minimal(beta) and validate(beta).ok
                  and beta.psi(1).keys() == array.psi(1).keys()
                  and beta.mixed_count == array.mixed_count
                  and beta.marks_top == array.marks_top
                  and beta.marks_bottom == array.marks_bottom)
            yield f"p={p} q={q} s={s} k={k}\n{array}", ok
        for (i, j), got in by_removed.items():
            expected = (binom(p, 2 * i) * double_factorial(2 * i - 1)
                        * binom(q, 2 * j) * double_factorial(2 * j - 1)
                        * _canonical_counts(p - 2 * i, q - 2 * j, s, k)[1])
            yield f"p={p} q={q} s={s} k={k} i={i} j={j}: {got} images, expected {expected}", \
                got == expected


def _zeta_cases(max_total: int) -> Iterator[Case]:
    for p, q, s, k in _small_specs(max_total, ARRAY_COLUMNS):
        by_marks: Counter = Counter()
        for array in enumerate_canonical_arrays(p, q, s, k):
            if not is_minimal(array):
                continue
            image = zeta(array)
            beta = image.vertical
            i, j = len(image.kappa_top), len(image.kappa_bottom)
            by_marks[(i, j)] += 1
            ok = (beta.is_vertical and validate(beta).ok
                  and len(beta.marks_top) == i + 1 and len(beta.marks_bottom) == j + 1
                  and zeta_inverse(image.kappa_top, image.kappa_bottom, beta) == array)
            yield f"p={p} q={q} s={s} k={k}\n{array}", ok
        for (i, j), got in by_marks.items():
            expected = falling_factorial(p, i) * falling_factorial(q, j) * series.v_vertical(s, k, i, j)
            yield f"p={p} q={q} s={s} k={k} i={i} j={j}: {got} minimal, expected {expected}", \
                got == expected


def _vertical_cases() -> Iterator[Case]:
    for s in range(1, 5):
        for k in range(1, 5):
            for i in range(3):
                for j in range(3):
                    n_all = sum(1 for _ in enumerate_vertical_arrays(s, k, i, j))
                    n_full = sum(1 for _ in enumerate_vertical_arrays(s, k, i, j, full=True))
                    yield f"s={s} k={k} i={i} j={j}: v {n_all}", n_all == series.v_vertical(s, k, i, j)
                    yield f"s={s} k={k} i={i} j={j}: f {n_full}", \
                        n_full == series.f_full_vertical(s, k, i, j)


def _profile_cases() -> Iterator[Case]:
    for s in range(1, 5):
        for k in range(1, 4):
            for i in range(3):
                for j in range(3):
                    classes: Counter = Counter()
                    for array in enumerate_vertical_arrays(s, k, i, j, full=True):
                        prof = profile(array)
                        classes[(prof.shape, prof.tail_length)] += 1
                    for (shape, length), got in classes.items():
                        expected = (s * falling_factorial(k - 1, length)
                                    * math.factorial(s - length - 1)
                                    * binom(k - length - 1, i) * binom(k - length - 1, j))
                        yield (f"s={s} k={k} i={i} j={j} shape={shape} l={length}: "
                               f"{got} arrays, expected {expected}"), got == expected


def bijections_suite(max_n: int) -> list[Check]:
    arrays = min(2 * max_n, ARRAY_TOTAL)
    recovery = min(2 * max_n, RECOVERY_TOTAL)
    return [
        _check("worked_example", "construction, recovery and redundant pairs of the worked example",
               _fixture_cases),
        _check("label_recovery", "label_recovery(from_paired_surjection(ps)) == ps",
               lambda: _recovery_cases(recovery)),
        _check("xi", "xi_inverse(xi(a)) == a and image counts C(p,2i)(2i-1)!! C(q,2j)(2j-1)!! m",
               lambda: _xi_cases(arrays)),
        _check("zeta", "zeta_inverse(zeta(a)) == a and m == (p)_i (q)_j v",
               lambda: _zeta_cases(arrays)),
        _check("vertical_counts", "v_vertical and f_full_vertical == exhaustive array counts",
               _vertical_cases),
        _check("profile_classes",
               "arrays per (shape, tail length) == s (k-1)_l (s-l-1)! C(k-l-1,i) C(k-l-1,j)",
               _profile_cases),
    ]


# ---------------------------------------------------------------------------
# forests
# ---------------------------------------------------------------------------

def fca_cases(max_k: int) -> Iterator[Case]:
    """Every base forest on up to ``max_k`` vertices and every admissible root split."""
    for k in range(1, max_k + 1):
        for base in enumerate_forests(k):
            roots = base.roots
            for m in range(1, len(roots)):
                for eliminated in itertools.combinations(roots, m):
                    yield from _fca_split_cases(base, eliminated)


def _fca_split_cases(base: RootedForest, eliminated: tuple[int, ...]) -> Iterator[Case]:
    surviving = [r for r in base.roots if r not in eliminated]
    label = f"base={base.parents} eliminated={eliminated}"
    targets = set(enumerate_superforests(base, surviving))
    images = set()
    roundtrip = True
    for a in completion_tuples(base, eliminated):
        res = fca_forward(CompletionInput(base, eliminated, a))
        images.add(res.forest)
        removals = [(r, res.forest.parents[r - 1]) for r in eliminated]
        inv = fca_inverse(res.forest, removals)
        if inv.a != a or inv.fcp != res.fcp or inv.base != base:
            roundtrip = False
    count = count_completions(base, eliminated)
    yield f"{label}: roundtrip", roundtrip
    yield f"{label}: {len(images)} images, {len(targets)} superforests, formula {count}", \
        images == targets and len(images) == count


def forests_suite(max_n: int) -> list[Check]:
    return [_check("forest_completion",
                   "FCA is a bijection onto superforests, k^(m-1)|S| of them, inverted stage by stage",
                   lambda: fca_cases(min(max_n, FOREST_SIZE)))]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "formulas": formulas_suite,
    "bijections": bijections_suite,
    "forests": forests_suite,
}


def run_suite(name: str, max_n: int = 7) -> Report:
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    if max_n < 1:
        raise ValueError(f"max_n must be positive, got {max_n}")
    start = time.perf_counter()
    names = list(SUITES) if name == "all" else [name]
    checks = [c for n in names for c in SUITES[n](max_n)]
    return Report(name, max_n, checks, time.perf_counter() - start)
