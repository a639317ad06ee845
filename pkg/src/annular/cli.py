"""Command-line front end: ``annular {dist,hz,sum,maps,verify}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from . import series
from .combinat import CycleDistribution
from .oracle import (DEFAULT_CEILING, ROOTED_MAP_CEILING, OracleJob, brute_distribution,
                     brute_distributions_by_s, brute_rooted_maps)
from .verify import SUITES, run_suite

__all__ = ["OutputRecord", "main", "build_parser"]

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


class CheckFailed(RuntimeError):
    pass


@dataclass
class OutputRecord:
    """
    One computed distribution.

    ``distribution`` maps a face (cycle) count ``k`` to its count and
    ``genus`` maps each genus to the same counts regrouped.
    """

    command: str
    parameters: dict[str, int]
    method: str
    distribution: dict[int, int]
    genus: dict[int, int]
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(self.parameters),
            "method": self.method,
            "distribution": {str(k): str(c) for k, c in sorted(self.distribution.items())},
            "genus": {str(g): str(c) for g, c in sorted(self.genus.items())},
            "seconds": round(self.seconds, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Mapping) -> OutputRecord:
        return cls(
            command=data["command"],
            parameters={str(k): int(v) for k, v in data["parameters"].items()},
            method=data["method"],
            distribution={int(k): int(c) for k, c in data["distribution"].items()},
            genus={int(g): int(c) for g, c in data["genus"].items()},
            seconds=float(data.get("seconds", 0.0)),
        )

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        return cls.from_dict(json.loads(text))

    def canonical_json(self) -> str:
        """Parameters and counts only, compact, for byte comparison across methods."""
        body = self.to_dict()
        del body["method"], body["seconds"]
        return json.dumps(body, sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = sorted(self.parameters)
        writer.writerow(["command", "method", *names, "k", "genus", "count"])
        for k, count in sorted(self.distribution.items()):
            writer.writerow([self.command, self.method, *(self.parameters[n] for n in names),
                             k, self.genus_of_k(k), count])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> OutputRecord:
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("CSV has no data rows")
        fixed = {"command", "method", "k", "genus", "count"}
        first = rows[0]
        params = {n: int(v) for n, v in first.items() if n not in fixed}
        dist = {int(r["k"]): int(r["count"]) for r in rows}
        genus: dict[int, int] = {}
        for r in rows:
            g = int(r["genus"])
            genus[g] = genus.get(g, 0) + int(r["count"])
        return cls(first["command"], params, first["method"], dist, genus)

    def genus_of_k(self, k: int) -> int:
        if self.command == "hz":
            return series.genus_of(k, self.parameters["p"] // 2, 1)
        return series.genus_of(k, (self.parameters["p"] + self.parameters["q"]) // 2, 2)

    def to_table(self) -> str:
        params = " ".join(f"{n}={v}" for n, v in self.parameters.items())
        lines = [f"{self.command} {params}", f"{'k':>4} {'genus':>6} {'count':>24}"]
        for k, count in sorted(self.distribution.items()):
            lines.append(f"{k:>4} {self.genus_of_k(k):>6} {count:>24}")
        lines.append(f"total {sum(self.distribution.values())}")
        return "\n".join(lines)


def _record(command: str, parameters: dict[str, int], method: str, counts: Mapping[int, int],
            seconds: float) -> OutputRecord:
    dist = {k: c for k, c in sorted(counts.items()) if c}
    rec = OutputRecord(command, parameters, method, dist, {}, seconds)
    genus: dict[int, int] = {}
    for k, c in dist.items():
        try:
            g = rec.genus_of_k(k)
        except ValueError as exc:
            raise CheckFailed(f"impossible face count in output: {exc}") from None
        genus[g] = genus.get(g, 0) + c
    rec.genus = dict(sorted(genus.items()))
    return rec


def _emit(rec: OutputRecord, fmt: str, out) -> None:
    if fmt == "json":
        out.write(rec.to_json() + "\n")
    elif fmt == "csv":
        out.write(rec.to_csv())
    else:
        out.write(rec.to_table() + "\n")


def _spec(p: int, q: int, s: int | None = None) -> series.SeriesSpec:
    try:
        return series.SeriesSpec(p, q, s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _brute_job(p: int, q: int, s: int | None, ceiling: int) -> OracleJob:
    try:
        return OracleJob(p, q, s, ceiling=ceiling)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_dist(args) -> OutputRecord:
    spec = _spec(args.p, args.q, args.s)
    start = time.perf_counter()
    if args.method == "formula":
        counts = series.main_series(spec).distribution().counts
    elif args.method == "reduction":
        counts = series.reduction_series(spec).distribution().counts
    else:
        counts = brute_distribution(_brute_job(spec.p, spec.q, spec.s, args.ceiling)).counts
    return _record("dist", {"p": spec.p, "q": spec.q, "s": spec.s},
                   args.method, counts, time.perf_counter() - start)


def cmd_hz(args) -> OutputRecord:
    p = args.p
    if p < 2 or p % 2:
        raise UsageError(f"hz needs an even p >= 2, got {p}")
    start = time.perf_counter()
    if args.method == "formula":
        counts = series.hz_series(p).distribution().counts
    else:
        counts = brute_distribution(_brute_job(p, 0, None, args.ceiling)).counts
    return _record("hz", {"p": p},
                   args.method, counts, time.perf_counter() - start)


def cmd_sum(args) -> OutputRecord:
    spec = _spec(args.p, args.q)
    start = time.perf_counter()
    if args.method == "jackson":
        if spec.p != spec.q:
            raise UsageError(f"the jackson route needs p == q, got p={spec.p}, q={spec.q}")
        counts = series.jackson_series(spec.p).distribution().counts
    elif args.method == "gs":
        counts = series.gs_series(spec.p, spec.q).distribution().counts
    elif args.method == "sum-s":
        counts = series.sum_over_s(spec.p, spec.q).distribution().counts
    else:
        # s = 0 pairings leave the two vertices disconnected; the sum starts at s = 1
        _brute_job(spec.p, spec.q, None, args.ceiling)
        by_s = brute_distributions_by_s(spec.p, spec.q, ceiling=args.ceiling)
        counts = sum((d for s, d in by_s.items() if s >= 1), CycleDistribution()).counts
    return _record("sum", {"p": spec.p, "q": spec.q},
                   args.method, counts, time.perf_counter() - start)


def cmd_maps(args) -> OutputRecord:
    spec = _spec(args.p, args.q, args.s)
    start = time.perf_counter()
    mono = series.to_monomial(series.main_series(spec))
    try:
        counts = {k: series.rooted_map_count(spec, k) for k, c in mono.coeffs.items() if c}
    except series.NonIntegralError as exc:
        raise CheckFailed(str(exc)) from None
    rec = _record("maps", {"p": spec.p, "q": spec.q, "s": spec.s}, "formula", counts, 0.0)
    if spec.p + spec.q <= args.ceiling:
        brute = brute_rooted_maps(spec.p, spec.q, spec.s, ceiling=args.ceiling)
        if brute != rec.genus:
            raise CheckFailed(f"rooted map counts disagree: formula {rec.genus}, brute {brute}")
        rec.method = "formula+brute"
    rec.seconds = time.perf_counter() - start
    return rec


def cmd_verify(args, out) -> int:
    report = run_suite(args.suite, args.max_n)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            out.write(f"{status} {check.name:<18} {check.cases:>7} cases "
                      f"{check.seconds:7.2f}s  {check.identity}\n")
            for failure in check.failures:
                out.write("    " + failure.replace("\n", "\n    ") + "\n")
        out.write(f"{'PASSED' if report.passed else 'FAILED'} in {report.seconds:.1f}s\n")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annular", description="Exact cycle (genus) distributions for one- and two-vertex maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, ceiling: int = DEFAULT_CEILING) -> None:
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--ceiling", type=int, default=ceiling,
                       help=f"largest p+q for brute-force enumeration (default {ceiling})")

    d = sub.add_parser("dist", help="two-vertex distribution with s mixed pairs")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--s", type=int, required=True)
    d.add_argument("--method", choices=("formula", "reduction", "brute"), default="formula")
    common(d)

    h = sub.add_parser("hz", help="one-vertex distribution")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--method", choices=("formula", "brute"), default="formula")
    common(h)

    s = sub.add_parser("sum", help="two-vertex distribution summed over s")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--method", choices=("jackson", "gs", "sum-s", "brute"), default="gs")
    common(s)

    m = sub.add_parser("maps", help="rooted two-vertex maps by genus")
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--s", type=int, required=True)
    common(m, ROOTED_MAP_CEILING)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--max-n", type=int, default=7,
                   help="largest edge count n = (p+q)/2 for the formula checks (default 7)")
    v.add_argument("--format", choices=("table", "json"), default="table")
    v.add_argument("--report", help="also write the JSON report to this file")
    return parser


COMMANDS = {"dist": cmd_dist, "hz": cmd_hz, "sum": cmd_sum, "maps": cmd_maps}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        rec = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"annular: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        print(f"annular: check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _emit(rec, args.format, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
