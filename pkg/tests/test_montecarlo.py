import json
import math

import pytest

from koutlab.bounds import lambda_star_sublinear, threshold_r1
from koutlab.montecarlo import (
    CSV_COLUMNS,
    derive_trial_seed,
    estimate_connectivity,
    rows_to_csv_text,
    rows_to_json,
    sweep_deletion_connectivity,
    sweep_giant,
    sweep_robustness,
)


class TestSeedDerivation:
    def test_pure(self):
        assert derive_trial_seed(123, 45) == derive_trial_seed(123, 45)

    def test_range(self):
        for i in (0, 1, 10**6, 2**40):
            s = derive_trial_seed(987654321, i)
            assert 0 <= s < 2**64

    def test_no_collisions_in_a_million(self):
        master = 0xDEADBEEF
        seeds = {derive_trial_seed(master, i) for i in range(1_000_000)}
        assert len(seeds) == 1_000_000

    def test_master_change_shows_in_every_window(self):
        a = [derive_trial_seed(0, i) for i in range(10_000)]
        b = [derive_trial_seed(1, i) for i in range(10_000)]
        for start in range(0, 10_000, 100):
            assert a[start:start + 100] != b[start:start + 100]


class TestEstimateConnectivity:
    def test_forced_complete(self):
        row = estimate_connectivity(3, 2, 50, 7)
        assert row.p_hat == 1.0 and row.success_count == 50

    def test_exact_bernoulli_accounting(self):
        row = estimate_connectivity(8, 1, 400, 11)
        assert row.p_hat * row.trials == row.success_count
        assert row.std_err == math.sqrt(row.p_hat * (1 - row.p_hat) / row.trials)
        assert row.metric_min <= row.metric_mean <= row.metric_max

    def test_thread_count_has_no_effect(self):
        rows = [estimate_connectivity(16, 2, 300, 5, threads=t) for t in (1, 4, 8)]
        assert rows[0] == rows[1] == rows[2]

    def test_zero_trials_rejected(self):
        with pytest.raises(ValueError):
            estimate_connectivity(16, 2, 0, 5)


class TestDeletionSweep:
    def test_rows_and_threshold_column(self):
        rows = sweep_deletion_connectivity(100, [0.2, 0.4], [2, 3], 30, 9)
        assert len(rows) == 4
        for row in rows:
            assert row.gamma == math.floor(row.alpha * 100)
            assert row.threshold == threshold_r1(row.alpha, 100)
            assert row.success_count <= row.trials

    def test_gamma_zero_reduces_to_plain_connectivity(self):
        rows = sweep_deletion_connectivity(30, [0.001], [2], 200, 21)
        assert rows[0].gamma == 0
        direct = estimate_connectivity(30, 2, 200, derive_trial_seed(21, 0))
        assert rows[0].success_count == direct.success_count

    def test_monotone_in_k_with_slack(self):
        rows = sweep_deletion_connectivity(100, [0.1], [1, 2, 3, 4], 300, 33)
        for a, b in zip(rows, rows[1:]):
            slack = 3 * (a.std_err + b.std_err)
            assert b.p_hat >= a.p_hat - slack


class TestGiantSweep:
    def test_requires_exactly_one_mode(self):
        with pytest.raises(ValueError):
            sweep_giant(100, [2], 10, 0)
        with pytest.raises(ValueError):
            sweep_giant(100, [2], 10, 0, alpha_list=[0.2], gamma_list=[5])

    def test_gamma_mode_columns(self):
        rows = sweep_giant(200, [2, 3], 40, 3, gamma_list=[5])
        assert len(rows) == 2
        for row in rows:
            assert row.gamma == 5 and row.alpha is None
            assert row.lambda_star == lambda_star_sublinear(row.k, 5, 200).value
            # success == residual connected == zero outside.
            assert (row.success_count == row.trials) == (row.metric_max == 0.0)

    def test_alpha_mode_gamma_floor(self):
        rows = sweep_giant(150, [5], 20, 4, alpha_list=[0.3])
        assert rows[0].gamma == 45 and rows[0].alpha == 0.3


class TestRobustnessSweep:
    def test_columns_and_connectivity_equivalence(self):
        rows = sweep_robustness(12, [1, 2, 4], 40, 6)
        for row in rows:
            assert row.threshold == row.k // 2
            assert 0 <= row.metric_min <= row.metric_mean <= row.metric_max
            # success means r* >= 1; metric_min == 0 iff some trial was disconnected.
            assert (row.success_count == row.trials) == (row.metric_min >= 1)


class TestOutputFormats:
    def test_csv_schema(self):
        rows = sweep_deletion_connectivity(50, [0.2], [2], 25, 13)
        text = rows_to_csv_text(rows, spec={"command": "sweep-delete", "n": 50})
        lines = text.strip().split("\n")
        assert lines[0].startswith("# spec: ")
        assert lines[1] == CSV_COLUMNS
        assert len(lines) == 3
        fields = lines[2].split(",")
        assert len(fields) == len(CSV_COLUMNS.split(","))
        assert fields[0] == "kout"
        json.loads(lines[0][len("# spec: "):])

    def test_float_formatting_six_significant_digits(self):
        rows = sweep_deletion_connectivity(50, [1 / 3], [2], 7, 13)
        line = rows_to_csv_text(rows).strip().split("\n")[-1]
        assert "0.333333" in line

    def test_json_mirror(self):
        rows = sweep_robustness(10, [2], 15, 6)
        payload = json.loads(rows_to_json(rows, spec={"command": "sweep-robust"}))
        assert payload["spec"]["command"] == "sweep-robust"
        assert payload["rows"][0]["model"] == "kout"
        assert payload["rows"][0]["trials"] == 15

    def test_rerun_byte_identical_across_threads(self):
        texts = []
        for threads in (1, 4, 8):
            rows = sweep_deletion_connectivity(60, [0.25], [2, 3], 50, 77, threads=threads)
            texts.append(rows_to_csv_text(rows))
        assert texts[0] == texts[1] == texts[2]
