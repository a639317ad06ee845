"""
Brute-force ground truth.

Every pairing ``mu`` of ``[p] ∪ [q]'`` is enumerated and the cycles of
``mu gamma^{-1}`` are counted.  The fast kernel walks the pairing tree once
and keeps ``gamma^{-1} t_1 ... t_r`` as it goes: right-multiplying by the
transposition ``(a b)`` splits a cycle when ``a`` and ``b`` share one and
merges two cycles otherwise.  ``gamma^{-1} mu`` is conjugate to
``mu gamma^{-1}``, so the cycle counts agree; :func:`brute_distribution_literal`
does the same job with :func:`~annular.combinat.compose` for cross-checking.

One pass tallies every mixed-pair count ``s`` at once.  Work can be split at
the first pairing decision (``p + q - 1`` shards) and spread over processes
with ``ANNULAR_THREADS``; shard results merge by addition.
"""
from __future__ import annotations

import os
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .combinat import (CycleDistribution, compose, cycle_count,
                       enumerate_pairings, gamma, inverse, pairing_count)

__all__ = [
    "DEFAULT_CEILING",
    "OracleJob",
    "CeilingExceeded",
    "brute_distribution",
    "brute_distributions_by_s",
    "brute_distribution_literal",
    "brute_series_values",
    "brute_rooted_maps",
    "thread_count",
]

DEFAULT_CEILING = 18
ROOTED_MAP_CEILING = 12


class CeilingExceeded(ValueError):
    pass


def thread_count() -> int:
    raw = os.environ.get("ANNULAR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"ANNULAR_THREADS must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class OracleJob:
    p: int
    q: int
    s: int | None = None
    threads: int | None = None
    ceiling: int = DEFAULT_CEILING
    progress: Callable[[int, int], None] | None = None

    def __post_init__(self):
        # validates parity and feasibility of s
        pairing_count(self.p, self.q, self.s)
        if self.p + self.q > self.ceiling:
            raise CeilingExceeded(
                f"p + q = {self.p + self.q} exceeds the brute-force ceiling {self.ceiling}")


def _tally_shard(p: int, q: int, first: int | None) -> dict[tuple[int, int], int]:
    n = p + q
    perm = [0] * n
    for i in range(p):
        perm[i] = (i - 1) % p
    for j in range(q):
        perm[p + j] = p + (j - 1) % q
    start = (p > 0) + (q > 0)
    width = n + 2
    out = [0] * ((n // 2 + 1) * width)

    def rec(rem: list[int], cyc: int, mixed: int) -> None:
        a = rem[0]
        if len(rem) == 2:
            b = rem[1]
            x = perm[a]
            while x != a and x != b:
                x = perm[x]
            out[(mixed + ((a < p) != (b < p))) * width + cyc + (1 if x == b else -1)] += 1
            return
        pa = perm[a]
        for idx in range(1, len(rem)):
            b = rem[idx]
            x = pa
            while x != a and x != b:
                x = perm[x]
            pb = perm[b]
            perm[a] = pb
            perm[b] = pa
            rec(rem[1:idx] + rem[idx + 1:], cyc + (1 if x == b else -1),
                mixed + ((a < p) != (b < p)))
            perm[a] = pa
            perm[b] = pb

    if n == 0:
        return {}
    rem = list(range(n))
    if first is None:
        rec(rem, start, 0)
    else:
        a, b = 0, first
        x = perm[a]
        while x != a and x != b:
            x = perm[x]
        pa, pb = perm[a], perm[b]
        perm[a], perm[b] = pb, pa
        cyc = start + (1 if x == b else -1)
        mixed = (a < p) != (b < p)
        if n == 2:
            out[mixed * width + cyc] += 1
        else:
            rec(rem[1:first] + rem[first + 1:], cyc, mixed)
    tally = {}
    for idx, c in enumerate(out):
        if c:
            tally[divmod(idx, width)] = c
    return tally


def _shard_job(args: tuple[int, int, int]) -> dict[tuple[int, int], int]:
    return _tally_shard(*args)


def _tally(p: int, q: int, threads: int, progress) -> dict[tuple[int, int], int]:
    n = p + q
    if threads <= 1 and progress is None:
        return _cached_tally(p, q)
    shards = list(range(1, n))
    total: Counter = Counter()
    if threads <= 1:
        results: Iterable = (_tally_shard(p, q, b) for b in shards)
        for done, part in enumerate(results, 1):
            total.update(part)
            if progress:
                progress(done, len(shards))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for done, part in enumerate(pool.map(_shard_job, [(p, q, b) for b in shards]), 1):
                total.update(part)
                if progress:
                    progress(done, len(shards))
    return dict(total)


@lru_cache(maxsize=64)
def _cached_tally(p: int, q: int) -> dict[tuple[int, int], int]:
    return _tally_shard(p, q, None)


def brute_distributions_by_s(p: int, q: int, *, threads: int | None = None,
                             ceiling: int = DEFAULT_CEILING,
                             progress=None) -> dict[int, CycleDistribution]:
    """Cycle distribution of ``mu gamma^{-1}`` for every mixed count ``s`` at once."""
    job = OracleJob(p, q, None, threads, ceiling, progress)
    if p == 0 and q == 0:
        return {}
    if p == 0 or q == 0:
        raise ValueError("gamma needs a nonempty first row; use p > 0 (q = 0 for one vertex)")
    workers = job.threads if job.threads is not None else thread_count()
    by_s: dict[int, dict[int, int]] = {}
    for (s, k), c in _tally(p, q, workers, progress).items():
        by_s.setdefault(s, {})[k] = c
    return {s: CycleDistribution(d) for s, d in sorted(by_s.items())}


def brute_distribution(job: OracleJob) -> CycleDistribution:
    """Distribution of cycle counts over pairings, filtered by ``job.s`` when set."""
    if job.p < 1:
        raise ValueError(f"the brute-force oracle needs p >= 1, got {job.p}")
    workers = job.threads if job.threads is not None else thread_count()
    by_s: Counter = Counter()
    for (s, k), c in _tally(job.p, job.q, workers, job.progress).items():
        if job.s is None or s == job.s:
            by_s[k] += c
    dist = CycleDistribution(by_s)
    expected = pairing_count(job.p, job.q, job.s)
    if dist.total != expected:
        raise AssertionError(f"oracle mass {dist.total} != pairing count {expected} for {job}")
    return dist


def brute_distribution_literal(p: int, q: int, s: int | None = None, *,
                               conjugate: bool = False) -> CycleDistribution:
    """
    Slow reference path: ``cycle_count(compose(mu, inverse(gamma)))`` per pairing.

    With ``conjugate=True`` the product is taken as ``gamma^{-1} mu`` instead.
    """
    g_inv = inverse(gamma(p, q))
    tally: Counter = Counter()
    for mu in enumerate_pairings(p, q, s):
        m = mu.as_permutation()
        prod = compose(g_inv, m) if conjugate else compose(m, g_inv)
        tally[cycle_count(prod)] += 1
    return CycleDistribution(tally)


def brute_series_values(job: OracleJob, x_points: Iterable[int]) -> list[int]:
    """The oracle distribution read as a polynomial and evaluated at each point."""
    dist = brute_distribution(job)
    return [dist.evaluate(x) for x in x_points]


# ---------------------------------------------------------------------------
# rooted maps
# ---------------------------------------------------------------------------

def _faces(rotation: list[int], edge: tuple[int, ...]) -> int:
    n = len(rotation)
    seen = bytearray(n)
    faces = 0
    for d in range(n):
        if seen[d]:
            continue
        faces += 1
        x = d
        while not seen[x]:
            seen[x] = 1
            x = rotation[edge[x]]
    return faces


def brute_rooted_maps(p: int, q: int, s: int, *,
                      ceiling: int = ROOTED_MAP_CEILING) -> dict[int, int]:
    """
    Rooted maps with two vertices of degrees ``p`` and ``q`` and ``s`` joining edges, by genus.

    Each candidate is a rotation system (cyclic order of edge-ends at both
    vertices) together with a root edge-end.  Candidates are relabelled into a
    canonical form, starting the root vertex at the root end and the other
    vertex at whichever rotation gives the smallest edge table, so each
    isomorphism class of rooted maps is counted once.
    """
    if s < 1:
        raise ValueError(f"a connected two-vertex map needs s >= 1, got {s}")
    if p + q > ceiling:
        raise CeilingExceeded(f"p + q = {p + q} exceeds the rooted-map ceiling {ceiling}")
    pairing_count(p, q, s)
    n_darts = p + q
    degrees = (p, q)
    offsets = (0, p)
    rotation = [(i + 1) % p for i in range(p)] + [p + (j + 1) % q for j in range(q)]
    seen: dict[tuple, int] = {}
    for mu in enumerate_pairings(p, q, s):
        mate = mu.mate
        for root in range(n_darts):
            rv = 0 if root < p else 1
            ov = 1 - rv
            rd, od = degrees[rv], degrees[ov]
            r0 = root - offsets[rv]
            best = None
            for t in range(od):
                relabel = [0] * n_darts
                for i in range(rd):
                    relabel[offsets[rv] + (r0 + i) % rd] = i
                for i in range(od):
                    relabel[offsets[ov] + (t + i) % od] = rd + i
                table = [0] * n_darts
                for d in range(n_darts):
                    table[relabel[d]] = relabel[mate[d]]
                key = tuple(table)
                if best is None or key < best:
                    best = key
            key = (rd, best)
            if key not in seen:
                seen[key] = _faces(rotation, mate)
    n_edges = (p + q) // 2
    by_genus: Counter = Counter()
    for faces in seen.values():
        twice = n_edges - faces
        if twice < 0 or twice % 2:
            raise AssertionError(f"impossible face count {faces} for {n_edges} edges")
        by_genus[twice // 2] += 1
    return dict(sorted(by_genus.items()))
