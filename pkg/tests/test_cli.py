import csv
import json
import statistics
import subprocess
import sys

import pytest

from quadcut.cli import main
from quadcut.graph import read_graph, serialize
from quadcut.records import verify_record


@pytest.fixture
def files(tmp_path):
    (tmp_path / "edge.txt").write_text("2 1\n1 2\n")
    (tmp_path / "k3.txt").write_text("3 3\n1 2\n2 3\n1 3\n")
    (tmp_path / "k33.txt").write_text(
        "6 9\n" + "".join(f"{a} {b}\n" for a in (1, 2, 3) for b in (4, 5, 6)))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestSolve:
    def test_edge(self, files, capsys):
        out_path = files / "out" / "r.json"
        code, out, _ = run(capsys, "solve", "--algo", "pquco", "--init", "idi",
                           "--graph", files / "edge.txt", "--seed", 1, "--out", out_path)
        assert code == 0
        assert out.startswith("cut=1 time=")
        rec = json.loads(out_path.read_text())
        assert rec["cut_value"] == 1 and rec["seed"] == 1
        assert verify_record(rec, read_graph(files / "edge.txt")) == 1

    def test_env_output_dir(self, files, capsys, monkeypatch):
        monkeypatch.setenv("QUADCUT_OUTPUT_DIR", str(files / "envout"))
        code, _, _ = run(capsys, "solve", "--graph", files / "k3.txt")
        assert code == 0
        assert (files / "envout" / "k3_pdeco_s0.json").exists()

    def test_gset_preset(self, files, capsys):
        out_path = files / "p.json"
        code, _, _ = run(capsys, "solve", "--algo", "pdeco", "--preset", "gset-manual",
                         "--graph", files / "k3.txt", "--batch-size", 4, "--out", out_path)
        assert code == 0
        cfg = json.loads(out_path.read_text())["config"]
        assert (cfg["ascent"]["alpha"], cfg["ascent"]["iterations"]) == (0.012, 80000)
        assert (cfg["lifted_ascent"]["alpha"], cfg["lifted_ascent"]["iterations"]) == (0.001, 2000)

    def test_pluco_lift_one(self, files, capsys):
        code, _, err = run(capsys, "solve", "--algo", "pluco", "--lift", 1, "--graph", files / "k3.txt")
        assert code == 2 and "lift_dim" in err

    def test_missing_file(self, files, capsys):
        assert run(capsys, "solve", "--graph", files / "none.txt")[0] == 2

    def test_malformed_file(self, files, capsys):
        (files / "bad.txt").write_text("3 1\n1 x\n")
        code, _, err = run(capsys, "solve", "--graph", files / "bad.txt")
        assert code == 2 and "line 2" in err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve"])
        assert exc.value.code == 2

    def test_numeric_overflow(self, files, capsys, monkeypatch):
        from quadcut import _backend, _pure

        def poisoned(indptr, indices, deg, cols, vel, *a, **k):
            cols[0, 0] = float("nan")
            return _pure.ascend_columns(indptr, indices, deg, cols, vel, *a, **k)

        monkeypatch.setattr(_backend.kernels, "ascend_columns", poisoned, raising=False)
        code, _, err = run(capsys, "solve", "--graph", files / "k3.txt", "--out", files / "x.json")
        assert code == 3


class TestGen:
    def test_k5(self, capsys):
        code, out, _ = run(capsys, "gen", "--n", 5, "--p", 1, "--seed", 0)
        assert code == 0
        assert out.splitlines()[0] == "5 10" and len(out.splitlines()) == 11

    def test_round_trip_and_density(self, tmp_path, capsys):
        path = tmp_path / "g.txt"
        code, _, _ = run(capsys, "gen", "--n", 700, "--p", 0.15, "--seed", 3, "--out", path)
        assert code == 0
        g = read_graph(path)
        assert g.n == 700
        pairs = 700 * 699 / 2
        mean, sd = 0.15 * pairs, (pairs * 0.15 * 0.85) ** 0.5
        assert abs(g.m - mean) <= 4 * sd
        assert serialize(g) == path.read_text()

    def test_bad_p(self, capsys):
        assert run(capsys, "gen", "--n", 5, "--p", 1.5)[0] == 2


class TestOracle:
    def test_triangle(self, files, capsys):
        code, out, _ = run(capsys, "oracle", "--graph", files / "k3.txt")
        assert code == 0 and out.splitlines()[0] == "optimum=2"

    def test_k33(self, files, capsys):
        assert run(capsys, "oracle", "--graph", files / "k33.txt")[1].startswith("optimum=9")

    def test_guard(self, tmp_path, capsys):
        (tmp_path / "big.txt").write_text("30 1\n1 2\n")
        assert run(capsys, "oracle", "--graph", tmp_path / "big.txt")[0] == 2


class TestBench:
    def _graphs(self, tmp_path):
        d = tmp_path / "graphs"
        d.mkdir()
        (d / "a.txt").write_text("2 1\n1 2\n")
        (d / "b.txt").write_text("3 3\n1 2\n2 3\n1 3\n")
        (d / "c.txt").write_text("5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n")
        return d

    def _rows(self, out):
        with open(out / "summary.csv") as fh:
            return list(csv.DictReader(fh))

    def _records(self, out):
        return [json.loads(line) for line in (out / "records.jsonl").read_text().splitlines()]

    def test_bookkeeping(self, tmp_path, capsys):
        d, out = self._graphs(tmp_path), tmp_path / "out"
        code, _, _ = run(capsys, "bench", d, "--algos", "pquco", "--seeds", "0,1",
                         "--batch-size", 8, "--out", out)
        assert code == 0
        recs = self._records(out)
        assert len(recs) == 6
        rows = self._rows(out)
        assert len(rows) == 1 and rows[0]["algorithm"] == "pquco" and rows[0]["n_runs"] == "6"
        mean = statistics.fmean(r["cut_value"] for r in recs)
        assert abs(float(rows[0]["mean_cut"]) - mean) <= 1e-9
        assert abs(float(rows[0]["mean_time_s"]) - statistics.fmean(r["wall_time"] for r in recs)) <= 1e-9
        assert sorted(r["cut_value"] for r in recs) == [1, 1, 2, 2, 4, 4]
        assert list(rows[0])[:5] == ["algorithm", "init", "lift", "mean_cut", "mean_time_s"]

    def test_sweep_lift(self, tmp_path, capsys):
        d = tmp_path / "one"
        d.mkdir()
        (d / "c5.txt").write_text("5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n")
        out = tmp_path / "out"
        code, _, _ = run(capsys, "bench", d, "--algos", "pluco", "--sweep-lift", "2,3,n",
                         "--batch-size", 8, "--out", out)
        assert code == 0
        rows = self._rows(out)
        assert [r["lift"] for r in rows] == ["2", "3", "n"]
        recs = self._records(out)
        assert [r["config"]["lift_dim"] for r in recs] == [2, 3, 5]

    def test_manual_preset(self, tmp_path, capsys):
        d, out = self._graphs(tmp_path), tmp_path / "out"
        run(capsys, "bench", d, "--algos", "pquco", "--params", "manual", "--preset", "smallER",
            "--batch-size", 4, "--out", out)
        for r in self._records(out):
            assert (r["config"]["ascent"]["alpha"], r["config"]["ascent"]["iterations"]) == (0.15, 48000)

    def test_auto_params(self, tmp_path, capsys):
        d, out = self._graphs(tmp_path), tmp_path / "out"
        code, _, _ = run(capsys, "bench", d, "--algos", "pquco", "--params", "auto",
                         "--search-t", "20,50", "--rounds", 2, "--batch-size", 4, "--out", out)
        assert code == 0
        for r in self._records(out):
            assert r["config"]["search"]["t_lower"] == 20 and r["search_trace"]

    def test_failures_recorded(self, tmp_path, capsys):
        d, out = self._graphs(tmp_path), tmp_path / "out"
        (d / "z_bad.txt").write_text("oops\n")
        code, _, err = run(capsys, "bench", d, "--algos", "pquco", "--batch-size", 4, "--out", out)
        assert code == 0 and "z_bad" in err
        recs = self._records(out)
        assert sum("error" in r for r in recs) == 1 and len(recs) == 4

    def test_all_fail(self, tmp_path, capsys):
        d = tmp_path / "bad"
        d.mkdir()
        (d / "x.txt").write_text("nope\n")
        assert run(capsys, "bench", d, "--algos", "pquco", "--out", tmp_path / "o")[0] != 0

    def test_jobs(self, tmp_path, capsys):
        d, out = self._graphs(tmp_path), tmp_path / "out"
        code, _, _ = run(capsys, "bench", d, "--algos", "pquco", "--batch-size", 4,
                         "--jobs", 2, "--out", out)
        assert code == 0
        assert self._rows(out)[0]["mean_time_s"] == ""
        assert len(self._records(out)) == 3

    def test_missing_dir(self, tmp_path, capsys):
        assert run(capsys, "bench", tmp_path / "nothing")[0] == 2


def test_console_module(tmp_path):
    (tmp_path / "e.txt").write_text("2 1\n1 2\n")
    proc = subprocess.run([sys.executable, "-m", "quadcut.cli", "oracle", "--graph", str(tmp_path / "e.txt")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "optimum=1" in proc.stdout
