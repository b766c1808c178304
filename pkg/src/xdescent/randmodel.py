"""Monte Carlo study of d_X(empty; n) for a random relation X.

Each off-diagonal pair is left out of X with probability ``p``, so G_n(X) is
the random digraph in which every arc appears independently with
probability ``p``.  ``Y`` is its number of Hamiltonian paths, counted exactly.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import limits
from .digraph import Digraph
from .hampath import count_paths


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p: float
    trials: int
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie strictly between 0 and 1, got {self.p}")
        if self.n < 1 or self.trials < 1:
            raise ValueError("n and trials must be positive")
        limits.check_size("hampath", self.n)
        # the DP visits about n^2 2^n transitions per trial
        limits.check_work(self.trials * self.n**2 * 2**self.n, "random experiment")

    @property
    def theoretical_mean(self) -> float:
        """E[Y] = n! p^(n-1)."""
        return math.factorial(self.n) * self.p ** (self.n - 1)

    @property
    def threshold(self) -> float:
        return 0.5 * self.theoretical_mean

    @property
    def pz_bound(self) -> float:
        """Lower bound (1/4) exp(1 - 1/p) on P(Y >= E[Y]/2)."""
        return 0.25 * math.exp(1 - 1 / self.p)

    @property
    def second_moment_bound(self) -> float:
        """Upper bound exp(1/p - 1) on E[Y^2] / E[Y]^2."""
        return math.exp(1 / self.p - 1)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, trial): serial and parallel runs agree."""
    return np.random.default_rng([seed, trial])


def sample_digraph(n: int, p: float, rng: np.random.Generator) -> Digraph:
    """Each arc ``i -> j`` (``i != j``) present independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    keep = rng.random((n, n)) < p
    np.fill_diagonal(keep, False)
    rows = tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in keep)
    return Digraph(n, rows)


def _run_trial(args: tuple[int, float, int, int]) -> tuple[int, int]:
    n, p, seed, trial = args
    D = sample_digraph(n, p, trial_rng(seed, trial))
    return count_paths(D), D.edge_count()


@dataclass
class ExperimentReport:
    """Exact per-trial path counts, with floating summaries kept separate."""

    config: ExperimentConfig
    values: list[int] = field(repr=False)
    edge_total: int

    @property
    def trials(self) -> int:
        return len(self.values)

    @property
    def empirical_mean(self) -> float:
        return sum(self.values) / self.trials

    @property
    def empirical_second_moment(self) -> float:
        return sum(v * v for v in self.values) / self.trials

    @property
    def mean_standard_error(self) -> float:
        return float(np.std(np.array(self.values, dtype=float), ddof=1) / math.sqrt(self.trials))

    @property
    def threshold_hits(self) -> list[bool]:
        t = self.config.threshold
        return [v >= t for v in self.values]

    @property
    def success_frequency(self) -> float:
        return sum(self.threshold_hits) / self.trials

    @property
    def success_standard_error(self) -> float:
        q = self.success_frequency
        return math.sqrt(q * (1 - q) / self.trials)

    @property
    def theoretical_mean(self) -> float:
        return self.config.theoretical_mean

    @property
    def pz_bound(self) -> float:
        return self.config.pz_bound

    @property
    def moment_ratio(self) -> float:
        mean = self.empirical_mean
        return self.empirical_second_moment / mean**2 if mean else math.nan

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["trial", "Y", "threshold_met"])
            for k, (v, hit) in enumerate(zip(self.values, self.threshold_hits)):
                writer.writerow([k, v, int(hit)])

    def summary(self) -> dict:
        return {
            "n": self.config.n,
            "p": self.config.p,
            "trials": self.trials,
            "seed": self.config.seed,
            "empirical_mean": self.empirical_mean,
            "mean_standard_error": self.mean_standard_error,
            "theoretical_mean": self.theoretical_mean,
            "empirical_second_moment": self.empirical_second_moment,
            "moment_ratio": self.moment_ratio,
            "second_moment_bound": self.config.second_moment_bound,
            "success_frequency": self.success_frequency,
            "pz_bound": self.pz_bound,
            "edge_total": self.edge_total,
        }


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    """Sample ``cfg.trials`` digraphs and count each one's Hamiltonian paths."""
    jobs = [(cfg.n, cfg.p, cfg.seed, t) for t in range(cfg.trials)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_run_trial(job) for job in jobs]
    return ExperimentReport(cfg, [y for y, _ in results], sum(e for _, e in results))


@dataclass(frozen=True)
class SecondMomentCheck:
    passed: bool
    ratio: float
    bound: float
    standard_error: float


def bootstrap_ratio_error(values: list[int], seed: int, resamples: int = 400) -> float:
    """Bootstrap standard error of mean(Y^2) / mean(Y)^2."""
    y = np.array(values, dtype=float)
    rng = np.random.default_rng([seed, 0x5EC0])
    idx = rng.integers(0, len(y), size=(resamples, len(y)))
    sample = y[idx]
    means = sample.mean(axis=1)
    ok = means > 0
    ratios = (sample[ok] ** 2).mean(axis=1) / means[ok] ** 2
    return float(ratios.std(ddof=1)) if len(ratios) > 1 else math.inf


def second_moment_check(
    cfg: ExperimentConfig,
    report: ExperimentReport | None = None,
    sigmas: float = 3.0,
) -> SecondMomentCheck:
    """Is the empirical E[Y^2]/E[Y]^2 at most exp(1/p - 1) * (1 + sigmas * se)?

    ``se`` is the bootstrap standard error of the ratio.
    """
    if report is None:
        report = run_experiment(cfg)
    ratio = report.moment_ratio
    se = bootstrap_ratio_error(report.values, cfg.seed)
    bound = cfg.second_moment_bound
    passed = not math.isnan(ratio) and ratio <= bound * (1 + sigmas * se)
    return SecondMomentCheck(passed, ratio, bound, se)
