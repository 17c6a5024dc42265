import json

import pytest

from koutlab.cli import design_guide, main
from koutlab.graph import from_edgelist_text
from koutlab.montecarlo import CSV_COLUMNS


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_triangle(self, capsys):
        code, out, err = run(capsys, "gen", "--n", "3", "--k", "2", "--seed", "7")
        assert code == 0
        assert out == "# n=3\n0 1\n0 2\n1 2\n"
        assert err.startswith("# spec: ")

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "gen", "--n", "12", "--k", "2", "--seed", "3")
        _, out2, _ = run(capsys, "gen", "--n", "12", "--k", "2", "--seed", "3")
        assert out1 == out2
        from_edgelist_text(out1)

    def test_invalid_k(self, capsys):
        code, _, err = run(capsys, "gen", "--n", "3", "--k", "9")
        assert code == 2 and "error" in err


class TestAnalyze:
    def test_report(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("# n=4\n0 1\n1 2\n")
        code, out, _ = run(capsys, "analyze", "--in", str(path))
        assert code == 0
        d = json.loads(out)
        assert d["n"] == 4 and d["edge_count"] == 2
        assert d["component_count"] == 2 and d["sizes"] == [3, 1]
        assert not d["connected"]
        assert d["spec"]["command"] == "analyze"


class TestBounds:
    def test_basic(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "16", "--k", "2")
        assert code == 0
        d = json.loads(out)
        assert d["lb_thm2"] == pytest.approx(0.999155, abs=1e-6)
        assert d["mean_trials_thm2"] == 1183
        assert d["spec"]["n"] == 16

    def test_thresholds_and_recommendation(self, capsys):
        code, out, _ = run(
            capsys, "bounds", "--n", "5000", "--k", "5",
            "--alpha", "0.4", "--lambda", "200", "--delta", "0.999", "--r", "3",
        )
        assert code == 0
        d = json.loads(out)
        assert d["thresholds"]["r1"] == pytest.approx(5.6171, abs=1e-3)
        assert d["thresholds"]["lambda_star_linear"] == 139
        assert "r4" in d["thresholds"]
        assert d["recommended_k"] == 2
        assert d["robustness_k"] == 6

    def test_infeasible_exit_code(self, capsys):
        code, _, err = run(capsys, "bounds", "--n", "10", "--k", "2")
        assert code == 3 and "error" in err


class TestRobust:
    def test_small_instance(self, capsys):
        code, out, _ = run(capsys, "robust", "--n", "10", "--k", "2", "--seed", "1")
        assert code == 0
        d = json.loads(out)
        assert d["r_star"] >= 1
        assert d["per_r"][: d["r_star"]] == [True] * d["r_star"]
        assert d["connected"] == (d["r_star"] >= 1)

    def test_cap_exit_code(self, capsys):
        code, _, err = run(capsys, "robust", "--n", "30", "--k", "2")
        assert code == 3 and "error" in err


class TestSweeps:
    def test_csv_with_spec_line(self, capsys):
        code, out, _ = run(capsys, "sweep-conn", "--n", "10", "--k", "2",
                           "--trials", "25", "--seed", "5")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("# spec: ")
        assert lines[1] == CSV_COLUMNS
        assert len(lines) == 3

    def test_k_range(self, capsys):
        code, out, _ = run(capsys, "sweep-conn", "--n", "10", "--k-min", "1",
                           "--k-max", "3", "--trials", "10", "--seed", "5")
        assert code == 0
        assert len(out.strip().split("\n")) == 5

    def test_json_flag(self, capsys):
        code, out, _ = run(capsys, "sweep-delete", "--n", "40", "--alpha", "0.25",
                           "--k", "2", "--trials", "20", "--seed", "5", "--json")
        assert code == 0
        d = json.loads(out)
        assert d["spec"]["command"] == "sweep-delete"
        assert d["rows"][0]["gamma"] == 10

    def test_rerun_byte_identical(self, capsys):
        argv = ["sweep-giant", "--n", "60", "--gamma", "3", "--k", "2",
                "--trials", "30", "--seed", "11"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_threads_flag_no_output_change(self, capsys):
        base = ["sweep-conn", "--n", "14", "--k", "2", "--trials", "40", "--seed", "2"]
        _, out1, _ = run(capsys, *base, "--threads", "1")
        _, out4, _ = run(capsys, *base, "--threads", "4")
        assert out1 == out4

    def test_threads_env_fallback(self, capsys, monkeypatch):
        base = ["sweep-conn", "--n", "14", "--k", "2", "--trials", "40", "--seed", "2"]
        _, out1, _ = run(capsys, *base)
        monkeypatch.setenv("KOUTLAB_THREADS", "4")
        _, out2, _ = run(capsys, *base)
        assert out1 == out2

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "rows.csv"
        code, out, _ = run(capsys, "sweep-conn", "--n", "10", "--k", "2",
                           "--trials", "10", "--seed", "5", "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text().strip().split("\n")[1] == CSV_COLUMNS

    def test_missing_k_range(self, capsys):
        code, _, err = run(capsys, "sweep-conn", "--n", "10", "--trials", "5", "--seed", "1")
        assert code == 2


class TestSpectralCommand:
    def test_rows(self, capsys):
        code, out, _ = run(capsys, "spectral", "--n", "16", "--k", "2",
                           "--trials", "3", "--seed", "9")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 8  # spec + header + 6 rows
        assert "kout/lambda2_comb" in lines[2]


class TestDesign:
    def test_q2(self, capsys):
        code, out, _ = run(capsys, "design", "--question", "q2", "--r", "3")
        assert code == 0
        assert json.loads(out)["recommended_k"] == 6

    def test_q3(self, capsys):
        code, out, _ = run(capsys, "design", "--question", "q3", "--n", "16",
                           "--delta", "0.999")
        assert code == 0
        d = json.loads(out)
        assert d["recommended_k"] == 2
        assert d["guarantee"].startswith("finite-n")

    def test_q1_linear(self, capsys):
        code, out, _ = run(capsys, "design", "--question", "q1", "--n", "5000",
                           "--alpha", "0.5", "--lambda", "1")
        assert code == 0
        d = json.loads(out)
        assert d["recommended_k_connectivity"] == 8
        assert "asymptotic" in d["guarantee"]

    def test_q1_sublinear(self):
        rec = design_guide("q1", n=50_000, gamma=1000, lam=100)
        assert rec["recommended_k_connectivity"] == 6
        assert rec["recommended_k_component_budget"] >= 2

    def test_missing_params(self, capsys):
        code, _, err = run(capsys, "design", "--question", "q2")
        assert code == 2


class TestArgparseErrors:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_unknown_flag(self, capsys):
        assert run(capsys, "gen", "--n", "3", "--k", "2", "--bogus")[0] == 2
