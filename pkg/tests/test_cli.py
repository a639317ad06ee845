import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from annular.cli import OutputRecord, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def record(*argv):
    code, text = run(*argv, "--format", "json")
    assert code == 0, text
    return OutputRecord.from_json(text)


def test_dist_brute_and_formula_agree():
    brute = run("dist", "--p", "3", "--q", "1", "--s", "1", "--method", "brute")
    formula = run("dist", "--p", "3", "--q", "1", "--s", "1", "--method", "formula")
    assert brute == formula
    assert brute[0] == 0
    assert "   2      0                        3" in brute[1]


@pytest.mark.parametrize("p, q, s", [(3, 1, 1), (4, 4, 2), (5, 3, 3), (6, 6, 2)])
def test_all_dist_methods_are_byte_identical(p, q, s):
    recs = [record("dist", "--p", str(p), "--q", str(q), "--s", str(s), "--method", m)
            for m in ("formula", "reduction", "brute")]
    assert len({r.canonical_json() for r in recs}) == 1


def test_dist_parity_error():
    code, _ = run("dist", "--p", "2", "--q", "3", "--s", "1")
    assert code == 2


def test_dist_json_schema():
    rec = record("dist", "--p", "6", "--q", "4", "--s", "2")
    data = json.loads(rec.to_json())
    assert data["parameters"] == {"p": 6, "q": 4, "s": 2}
    assert data["distribution"] == {"1": "60", "3": "360", "5": "120"}
    assert data["genus"] == {"0": "120", "1": "360", "2": "60"}
    assert all(isinstance(v, str) for v in data["distribution"].values())


def test_hz():
    assert record("hz", "--p", "4", "--method", "formula").distribution == {1: 1, 3: 2}
    assert record("hz", "--p", "4", "--method", "brute").distribution == {1: 1, 3: 2}
    assert record("hz", "--p", "2").distribution == {2: 1}
    assert record("hz", "--p", "2").genus == {0: 1}
    assert run("hz", "--p", "3")[0] == 2


def test_sum_routes_agree():
    outs = {m: record("sum", "--p", "2", "--q", "2", "--method", m).distribution
            for m in ("jackson", "gs", "sum-s", "brute")}
    assert len({tuple(sorted(d.items())) for d in outs.values()}) == 1
    assert record("sum", "--p", "1", "--q", "1", "--method", "gs").distribution == {1: 1}
    assert (record("sum", "--p", "4", "--q", "6", "--method", "brute").canonical_json()
            == record("sum", "--p", "4", "--q", "6", "--method", "gs").canonical_json())
    assert run("sum", "--p", "2", "--q", "4", "--method", "jackson")[0] == 2


def test_maps():
    assert record("maps", "--p", "1", "--q", "1", "--s", "1").genus == {0: 1}
    assert record("maps", "--p", "2", "--q", "2", "--s", "2").genus == {0: 1}
    rec = record("maps", "--p", "4", "--q", "4", "--s", "2")
    assert rec.genus == {0: 8, 1: 10} and rec.method == "formula+brute"
    big = record("maps", "--p", "8", "--q", "6", "--s", "2")
    assert big.method == "formula"


def test_brute_ceiling_is_a_flag():
    assert run("dist", "--p", "10", "--q", "10", "--s", "2", "--method", "brute")[0] == 2
    assert run("dist", "--p", "5", "--q", "3", "--s", "1", "--method", "brute",
               "--ceiling", "6")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("dist", "--p", "3")[0] == 2
    assert run("dist", "--p", "3", "--q", "1", "--s", "1", "--method", "nope")[0] == 2


def test_csv_roundtrip():
    code, text = run("dist", "--p", "5", "--q", "3", "--s", "1", "--format", "csv")
    assert code == 0
    assert text.splitlines()[0] == "command,method,p,q,s,k,genus,count"
    rec = OutputRecord.from_csv(text)
    assert rec == record("dist", "--p", "5", "--q", "3", "--s", "1")


@given(st.dictionaries(st.integers(1, 15).map(lambda x: 2 * x),
                       st.integers(1, 10 ** 40), min_size=1, max_size=6))
def test_json_roundtrip(dist):
    rec = OutputRecord("dist", {"p": 31, "q": 29, "s": 2}, "formula", dist,
                       {(30 - k) // 2: c for k, c in dist.items()}, 1.5)
    assert OutputRecord.from_json(rec.to_json()) == rec
    assert OutputRecord.from_csv(rec.to_csv()) == rec


def test_verify_forests_small():
    code, text = run("verify", "--suite", "forests", "--max-n", "4", "--format", "json")
    assert code == 0
    report = json.loads(text)
    assert report["passed"] and report["checks"][0]["name"] == "forest_completion"


def test_verify_writes_report(tmp_path):
    path = tmp_path / "report.json"
    code, text = run("verify", "--suite", "forests", "--max-n", "3", "--report", str(path))
    assert code == 0 and text.startswith("PASS forest_completion")
    assert json.loads(path.read_text())["passed"]


def test_verify_failure_exit_code(monkeypatch):
    from annular import series
    original = series.delta
    monkeypatch.setattr(series, "delta", lambda spec, k, i, j: original(spec, k + 1, i, j))
    code, text = run("verify", "--suite", "formulas", "--max-n", "3")
    assert code == 1
    assert "FAIL two_vertex" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "annular", "hz", "--p", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "total 1" in proc.stdout
