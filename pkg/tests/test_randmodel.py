import csv
import math

import numpy as np
import pytest

from xdescent.errors import BudgetExceeded, SizeLimit
from xdescent.randmodel import (
    ExperimentConfig,
    run_experiment,
    sample_digraph,
    second_moment_check,
    trial_rng,
)


def test_extreme_edge_probabilities():
    rng = trial_rng(0, 0)
    assert sample_digraph(4, 1.0, rng).edge_count() == 12
    assert sample_digraph(4, 0.0, rng).edge_count() == 0
    with pytest.raises(ValueError):
        ExperimentConfig(4, 0.0, 10)
    with pytest.raises(ValueError):
        ExperimentConfig(4, 1.0, 10)
    with pytest.raises(ValueError):
        sample_digraph(3, 1.5, rng)


def test_config_limits(monkeypatch):
    with pytest.raises(SizeLimit):
        ExperimentConfig(30, 0.5, 1)
    monkeypatch.setenv("XDESCENT_BUDGET", "1000")
    with pytest.raises(BudgetExceeded):
        ExperimentConfig(8, 0.5, 200)


def test_theory():
    cfg = ExperimentConfig(8, 0.5, 10)
    assert cfg.theoretical_mean == pytest.approx(40320 / 128)
    assert cfg.threshold == pytest.approx(cfg.theoretical_mean / 2)
    assert cfg.pz_bound == pytest.approx(0.25 * math.exp(-1))
    assert cfg.second_moment_bound == pytest.approx(math.e)


def test_deterministic_per_seed():
    a = run_experiment(ExperimentConfig(5, 0.5, 30, seed=42))
    b = run_experiment(ExperimentConfig(5, 0.5, 30, seed=42))
    c = run_experiment(ExperimentConfig(5, 0.5, 30, seed=43))
    assert a.values == b.values and a.edge_total == b.edge_total
    assert a.values != c.values


def test_serial_equals_parallel():
    cfg = ExperimentConfig(6, 0.5, 24, seed=7)
    assert run_experiment(cfg).values == run_experiment(cfg, workers=2).values


def test_nearly_complete_digraph():
    report = run_experiment(ExperimentConfig(3, 0.999, 50, seed=1))
    assert report.empirical_mean == pytest.approx(6, abs=0.1)
    assert second_moment_check(report.config, report).passed


def test_edge_frequency():
    cfg = ExperimentConfig(7, 0.3, 300, seed=3)
    report = run_experiment(cfg)
    slots = cfg.trials * cfg.n * (cfg.n - 1)
    sigma = math.sqrt(slots * cfg.p * (1 - cfg.p))
    assert abs(report.edge_total - slots * cfg.p) <= 4 * sigma


def test_mean_within_three_standard_errors():
    report = run_experiment(ExperimentConfig(7, 0.6, 400, seed=11))
    assert abs(report.empirical_mean - report.theoretical_mean) <= 3 * report.mean_standard_error


def test_success_frequency_above_bound():
    report = run_experiment(ExperimentConfig(8, 0.5, 200, seed=5))
    assert report.success_frequency >= report.pz_bound - 3 * report.success_standard_error


@pytest.mark.parametrize("n,p,trials", [(7, 0.5, 500), (6, 0.25, 500)])
def test_second_moment(n, p, trials):
    check = second_moment_check(ExperimentConfig(n, p, trials, seed=9))
    assert check.passed, check


def test_trial_streams_independent_of_order():
    x = trial_rng(4, 17).random(5)
    trial_rng(4, 3).random(100)
    assert np.array_equal(trial_rng(4, 17).random(5), x)


def test_csv(tmp_path):
    report = run_experiment(ExperimentConfig(4, 0.5, 8, seed=2))
    path = tmp_path / "y.csv"
    report.write_csv(path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["trial", "Y", "threshold_met"]
    assert [int(r[1]) for r in rows[1:]] == report.values
    assert report.summary()["trials"] == 8
