"""End-to-end estimator runs, scenario batteries, and CSV output."""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .analysis import samples_cor1, theorem1_bounds
from .constants import K_MAX
from .mixture import Mixture, center, mixture_variance
from .moments import empirical_moments, exact_moments, power_sums_from_moments
from .newton_poly import match_roots, recover_means
from .sampling import SampleSet, center_samples, sample

# Sample counts computed from the sample-complexity formula are refused above
# this; scenarios needing more must set "n" explicitly.
MAX_COMPUTED_N = 10**9


@dataclass
class TrialRecord:
    trial_index: int
    seed: int
    n: int | None  # None: exact moments injected (infinite-sample limit)
    estimated_means: list[float] = field(default_factory=list)
    per_mean_error: list[float] = field(default_factory=list)
    max_error: float = math.nan
    eps_effective: float = math.nan
    bound_coeff_times_eps: float = math.nan
    within_bound: bool = False
    moment_residuals: list[float] = field(default_factory=list)
    root_flags: int = 0
    failure: str | None = None


def estimate_means(samples: SampleSet, k: int, delta: float) -> tuple[list[float], int, list[float]]:
    """Run the estimator on raw data: returns (means, flagged roots, moments).

    The per-moment failure budget is delta / (2k).
    """
    centered, shift = center_samples(samples)
    moments = empirical_moments(centered, k, delta / (2 * k))
    means, _, flagged = recover_means(power_sums_from_moments(moments, k), k)
    return [m + shift for m in means], flagged, list(moments.values)


def run_pipeline(mixture: Mixture, n: int | None, delta: float, seed: int, trial_index: int = 0, threads: int = 1) -> TrialRecord:
    """One estimation trial against a known mixture.

    sample -> center -> median-of-means moments (orders 1..k) -> power sums
    -> elementary symmetric values -> Aberth roots -> real projection ->
    sorted matching. ``n=None`` injects exact moments instead of sampling.
    Failures are recorded on the returned record, not raised.
    """
    rec = TrialRecord(trial_index=trial_index, seed=seed, n=n)
    k = mixture.k
    truth = list(mixture.means)
    centered_truth, _ = center(truth)
    truth_c = Mixture(tuple(centered_truth))
    sigma = math.sqrt(mixture_variance(mixture))
    exact = exact_moments(truth_c, k)
    try:
        if n is None:
            shift = math.fsum(truth) / k
            moments = exact
        else:
            centered, shift = center_samples(sample(mixture, n, seed, threads=threads))
            moments = empirical_moments(centered, k, delta / (2 * k))
        means, _, flagged = recover_means(power_sums_from_moments(moments, k), k)
    except ValueError as exc:
        rec.failure = str(exc)
        return rec
    est = [m + shift for m in means]
    pairs = match_roots(est, truth)
    rec.estimated_means = est
    rec.per_mean_error = [err for _, _, err in pairs]
    rec.max_error = max(rec.per_mean_error)
    rec.root_flags = flagged
    rec.moment_residuals = moments - exact
    rec.eps_effective = max(abs(d) / sigma**m for m, d in enumerate(rec.moment_residuals, 1))
    try:
        coeffs = theorem1_bounds(truth_c).error_coeffs
    except ValueError as exc:
        rec.failure = f"bound unavailable: {exc}"
        return rec
    bounds = [c * rec.eps_effective for c in coeffs]
    rec.bound_coeff_times_eps = max(bounds)
    rec.within_bound = all(err <= b for err, b in zip(rec.per_mean_error, bounds))
    return rec


@dataclass(frozen=True)
class Scenario:
    name: str
    gaps: tuple[float, ...]
    epsilon: float
    delta: float
    trials: int
    base_seed: int
    n_override: int | None = None

    def __post_init__(self):
        for i, g in enumerate(self.gaps):
            if not g > 0:
                raise ValueError(f"scenario {self.name!r}: gaps[{i}]={g} must be > 0")
        if len(self.gaps) + 1 > K_MAX:
            raise ValueError(f"scenario {self.name!r}: gaps gives k={len(self.gaps) + 1} > K_MAX={K_MAX}")
        if len(self.gaps) < 1:
            raise ValueError(f"scenario {self.name!r}: gaps needs at least one entry")
        if not self.epsilon > 0:
            raise ValueError(f"scenario {self.name!r}: epsilon must be > 0")
        if not 0 < self.delta < 1:
            raise ValueError(f"scenario {self.name!r}: delta must lie in (0, 1)")
        if self.trials < 1:
            raise ValueError(f"scenario {self.name!r}: trials must be >= 1")
        if self.n_override is not None and self.n_override < 1:
            raise ValueError(f"scenario {self.name!r}: n must be >= 1")

    @property
    def k(self) -> int:
        return len(self.gaps) + 1

    def mixture(self) -> Mixture:
        means = np.concatenate([[0.0], np.cumsum(self.gaps)]).tolist()
        return Mixture(tuple(center(means)[0]))

    def sample_count(self) -> int:
        if self.n_override is not None:
            return self.n_override
        count = samples_cor1(self.epsilon, self.delta, self.mixture())
        if count.saturated or count.value > MAX_COMPUTED_N:
            raise ValueError(f"scenario {self.name!r}: computed n={count.exact:.3g} is impractical; set 'n' explicitly")
        return count.value


_GAP_TOKENS = {"eps": 1, "eps2": 2, "eps^2": 2}


def _resolve_gap(g, eps: float, i: int):
    if isinstance(g, str):
        if g not in _GAP_TOKENS:
            raise ValueError(f"gaps[{i}]: unknown token {g!r} (use 'eps' or 'eps2')")
        return eps ** _GAP_TOKENS[g]
    if isinstance(g, bool) or not isinstance(g, (int, float)):
        raise ValueError(f"gaps[{i}]: expected a number or token, got {g!r}")
    return float(g)


def scenario_from_dict(d: dict) -> Scenario:
    for key in ("name", "gaps", "epsilon", "delta", "trials", "base_seed"):
        if key not in d:
            raise ValueError(f"scenario is missing field {key!r}")
    eps = float(d["epsilon"])
    gaps = tuple(_resolve_gap(g, eps, i) for i, g in enumerate(d["gaps"]))
    return Scenario(
        name=str(d["name"]),
        gaps=gaps,
        epsilon=eps,
        delta=float(d["delta"]),
        trials=int(d["trials"]),
        base_seed=int(d["base_seed"]),
        n_override=None if d.get("n") is None else int(d["n"]),
    )


def load_scenario(path) -> Scenario:
    return scenario_from_dict(json.loads(Path(path).read_text()))


def run_scenario(s: Scenario, threads: int = 1) -> list[TrialRecord]:
    mixture = s.mixture()
    n = s.sample_count()

    def one(i):
        return run_pipeline(mixture, n, s.delta, s.base_seed + i, trial_index=i)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            records = list(pool.map(one, range(s.trials)))
    else:
        records = [one(i) for i in range(s.trials)]
    return sorted(records, key=lambda r: r.trial_index)


@dataclass(frozen=True)
class Summary:
    trials: int
    failures: int
    mean_max_error: float
    median_max_error: float
    q90_max_error: float
    median_eps_effective: float
    within_bound_fraction: float


def summarize(records: Sequence[TrialRecord]) -> Summary:
    ok = [r for r in records if r.failure is None]
    errs = [r.max_error for r in ok]

    def q(v, p):
        return float(np.quantile(v, p)) if v else math.nan

    return Summary(
        trials=len(records),
        failures=len(records) - len(ok),
        mean_max_error=statistics.fmean(errs) if errs else math.nan,
        median_max_error=q(errs, 0.5),
        q90_max_error=q(errs, 0.9),
        median_eps_effective=q([r.eps_effective for r in ok], 0.5),
        within_bound_fraction=sum(r.within_bound for r in records) / len(records),
    )


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return "" if math.isnan(x) else repr(x)
    return str(x)


def csv_header(k: int) -> list[str]:
    return (
        ["trial_index", "seed", "n", "eps_effective", "max_error", "within_bound"]
        + [f"per_mean_error_{i}" for i in range(1, k + 1)]
        + [f"moment_residual_{i}" for i in range(1, k + 1)]
    )


def records_to_csv(records: Sequence[TrialRecord], k: int) -> str:
    """One row per trial plus a trailing ``summary`` row.

    Summary row: n of the battery, median eps_effective, median max_error,
    within-bound fraction, then per-column medians of per-mean errors and of
    |moment residuals|. Floats use shortest round-trip repr.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_header(k))
    for r in records:
        pad = [""] * k
        w.writerow(
            [_fmt(v) for v in (r.trial_index, r.seed, r.n, r.eps_effective, r.max_error, r.within_bound)]
            + [_fmt(v) for v in (r.per_mean_error or pad)]
            + [_fmt(v) for v in (r.moment_residuals or pad)]
        )
    s = summarize(records)
    ok = [r for r in records if r.failure is None]

    def col_median(rows):
        return [float(np.median(c)) for c in zip(*rows)] if rows else [math.nan] * k

    n = records[0].n if records else None
    w.writerow(
        ["summary", "", _fmt(n), _fmt(s.median_eps_effective), _fmt(s.median_max_error), _fmt(s.within_bound_fraction)]
        + [_fmt(v) for v in col_median([r.per_mean_error for r in ok])]
        + [_fmt(v) for v in col_median([[abs(x) for x in r.moment_residuals] for r in ok])]
    )
    return buf.getvalue()
