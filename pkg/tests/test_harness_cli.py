import csv
import io

import pytest

from smlg_lab import cli, harness
from smlg_lab.model import parse_graph, parse_ov, parse_pattern
from smlg_lab.reduction import pattern_length


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_report_is_deterministic():
    a = harness.run_verify_reduction(60, 5, 5, 4, seed=42)
    b = harness.run_verify_reduction(60, 5, 5, 4, seed=42, workers=4)
    assert a.summary() == b.summary()
    assert [r.instance for r in a.results] == [r.instance for r in b.results]
    assert a.ok


def test_verify_acyclic_respects_m_le_n():
    rep = harness.run_verify_reduction(100, 6, 6, 4, seed=3, variant="acyclic")
    assert rep.ok and all(r.M <= r.N for r in rep.results)


def test_planted_pairs_are_positive():
    rep = harness.run_verify_reduction(50, 8, 8, 12, seed=5, p=0.9)
    assert all(r.ov for r in rep.results if r.planted)


def test_threads_env(monkeypatch):
    monkeypatch.setenv(harness.THREADS_ENV, "3")
    assert harness.worker_count() == 3
    monkeypatch.setenv(harness.THREADS_ENV, "nope")
    assert harness.worker_count() == 1


def test_bench_rows_and_header():
    records = harness.bench_matcher([(1, 1, 2), (2, 2, 2)], repetitions=5, seed=1)
    assert len(records) == 10
    buf = io.StringIO()
    harness.write_bench_csv(records, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,m,d,variant,v,e,p,ns,answer,seed"
    for r in records:
        assert r.ns > 0 and r.p == pattern_length(r.m, r.d)


def test_split_grid_rows():
    rows = harness.run_split_grid()
    violating = [r for r in rows if r["status"] == "hypothesis-violation"]
    assert {(r["delta"], r["beta"]) for r in violating} <= {(d, b) for d in (1.0, 1.5) for b in (1.0, 1.5, 2.0)}
    assert any(r["alpha"] == 1 and r["delta"] == 1 and r["beta"] == 1 for r in violating)
    valid = [r for r in rows if r["status"] != "hypothesis-violation"]
    assert all(r["status"] == "ok" for r in valid)
    assert all(r["a_exp"] < 2 and r["b_exp"] < 2 for r in valid)


def test_cli_pipeline(tmp_path, capsys):
    ov = tmp_path / "inst.ov"
    code, _, _ = run(capsys, "gen-ov", "--n", "3", "--m", "4", "--d", "5", "--planted", "--seed", "9", "-o", str(ov))
    assert code == 0
    inst = parse_ov(ov.read_text())
    g, p = tmp_path / "g.txt", tmp_path / "p.txt"
    code, _, _ = run(capsys, "reduce", "ov-to-smlg", str(ov), "--variant", "cyclic", "-g", str(g), "-p", str(p))
    assert code == 0
    assert parse_graph(g.read_text()).num_nodes > 0
    assert len(parse_pattern(p.read_text())) == pattern_length(4, 5)
    code, out, _ = run(capsys, "match", "--graph", str(g), "--pattern", str(p), "--witness")
    assert code == 0 and out.splitlines()[0] == "true"
    assert len(out.splitlines()[1].split()) == pattern_length(4, 5)


def test_cli_gen_is_seeded(tmp_path, capsys):
    _, a, _ = run(capsys, "gen-ov", "--n", "3", "--m", "3", "--d", "4", "--seed", "1")
    _, b, _ = run(capsys, "gen-ov", "--n", "3", "--m", "3", "--d", "4", "--seed", "1")
    assert a == b and parse_ov(a).N == 3


def test_cli_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--trials", "40", "--seed", "2", "--failures-out", str(tmp_path / "f.ov"))
    assert code == 0 and "failures=0" in out
    _, again, _ = run(capsys, "verify", "--trials", "40", "--seed", "2")
    assert out == again


def test_cli_split_plan(capsys):
    code, out, _ = run(capsys, "split-plan", "--alpha", "1", "--delta", "0.5", "--beta", "1", "--n", "1000000")
    assert code == 0
    assert "case_id=C2_1" in out and "n_cap=1000" in out
    rows = list(csv.DictReader(io.StringIO(out[out.index("alpha,"):])))
    assert rows[0]["status"] == "ok"
    code, _, err = run(capsys, "split-plan", "--alpha", "1", "--delta", "1", "--beta", "1", "--n", "100")
    assert code == 2 and "delta < 1 or beta < 1" in err


def test_cli_split_grid(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code, _, err = run(capsys, "split-grid", "-o", str(out))
    assert code == 0 and "failed=0" in err
    assert out.read_text().startswith(",".join(harness.GRID_HEADER))


def test_cli_bench(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, _, _ = run(capsys, "bench", "--sizes", "1,1,2;2,2,2", "--repetitions", "2", "-o", str(out))
    assert code == 0
    assert len(out.read_text().splitlines()) == 5


def test_cli_subed(tmp_path, capsys):
    (tmp_path / "t").write_text("banana\n")
    (tmp_path / "p").write_text("nbn\n")
    code, out, _ = run(capsys, "subed", "--text", str(tmp_path / "t"), "--pattern", str(tmp_path / "p"))
    assert code == 0 and out.strip() == "1"


def test_cli_sic(tmp_path, capsys):
    sets = tmp_path / "sets.sic"
    sets.write_text("sic v1\n3 3\n1 2\n3\n2 3\n")
    _, out, _ = run(capsys, "sic-query", "--sets", str(sets), "1", "3")
    assert out.strip() == "true"
    g = tmp_path / "g.txt"
    run(capsys, "reduce", "sic", str(sets), "-g", str(g))
    _, out, _ = run(capsys, "sic-query", "--graph", str(g), "1", "2")
    assert out.strip() == "false"


def test_cli_reports_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.ov"
    bad.write_text("ov v1\n1 1 2\n10\n")
    code, _, err = run(capsys, "reduce", "ov-to-smlg", str(bad))
    assert code == 2 and "line" in err


def test_failure_instance_written(tmp_path, monkeypatch, capsys):
    def broken(g, p, stats=None):
        return False

    monkeypatch.setattr(harness, "match_online", broken)
    out = tmp_path / "fail.ov"
    code, _, _ = run(capsys, "verify", "--trials", "10", "--seed", "0", "--failures-out", str(out))
    assert code == 1
    assert parse_ov(out.read_text()).N >= 1
