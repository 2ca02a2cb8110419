import csv
import io
import json
import math
from pathlib import Path

import pytest

from pcfgmm.experiments import (
    Scenario,
    TrialRecord,
    estimate_means,
    load_scenario,
    records_to_csv,
    run_pipeline,
    run_scenario,
    scenario_from_dict,
    summarize,
)
from pcfgmm.mixture import Mixture
from pcfgmm.moments import group_count
from pcfgmm.newton_poly import uniqueness_check
from pcfgmm.sampling import sample

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def test_two_means_pilot():
    r = run_pipeline(Mixture((-1, 1)), 10**6, 0.05, seed=0)
    assert r.failure is None
    assert r.max_error <= 0.05
    assert r.max_error == max(r.per_mean_error)
    assert len(r.moment_residuals) == 2 and r.root_flags == 0


def test_too_few_samples_is_a_failure_record():
    n = group_count(0.05 / 4) - 1
    r = run_pipeline(Mixture((-1, 1)), n, 0.05, seed=1)
    assert r.failure is not None and "needs at least" in r.failure
    assert math.isnan(r.max_error) and not r.within_bound


def test_exact_moment_mode():
    for means in [(-1, 0, 1), (0.3, 1.1, 2.0, 4.2), (-2, -0.5, 0.25, 1, 1.75)]:
        mix = Mixture(means)
        r = run_pipeline(mix, None, 0.05, seed=0)
        assert r.max_error <= 1e-8
        # no moment noise: the bound collapses to zero
        assert r.eps_effective == 0 and r.bound_coeff_times_eps == 0
        assert uniqueness_check(mix)


def test_estimate_means_on_raw_samples():
    s = sample(Mixture((2, 6)), 10**6, seed=3)
    means, flagged, moments = estimate_means(s, 2, 0.05)
    assert flagged == 0 and len(moments) == 2
    assert means == pytest.approx([2, 6], abs=0.05)


def small(**kw):
    d = dict(name="t", gaps=(2.0,), epsilon=0.05, delta=0.05, trials=3, base_seed=40, n_override=20000)
    d.update(kw)
    return Scenario(**d)


def test_one_trial_equals_run_pipeline():
    s = small(trials=1)
    (rec,) = run_scenario(s)
    direct = run_pipeline(s.mixture(), 20000, 0.05, seed=40)
    assert rec == direct


def test_run_scenario_seeds_and_order():
    recs = run_scenario(small(), threads=3)
    assert [r.trial_index for r in recs] == [0, 1, 2]
    assert [r.seed for r in recs] == [40, 41, 42]
    assert recs == run_scenario(small())


def test_csv_deterministic_and_shaped():
    s = small(trials=4)
    a = records_to_csv(run_scenario(s), s.k)
    b = records_to_csv(run_scenario(s, threads=2), s.k)
    assert a == b
    rows = list(csv.reader(io.StringIO(a)))
    assert len(rows) == 1 + 4 + 1
    assert rows[0][:6] == ["trial_index", "seed", "n", "eps_effective", "max_error", "within_bound"]
    assert all(len(r) == len(rows[0]) for r in rows)
    assert rows[-1][0] == "summary"
    assert {r[5] for r in rows[1:-1]} <= {"0", "1"}


def test_summary_within_bound_fraction():
    recs = [TrialRecord(i, i, 10, max_error=0.1 * i, within_bound=i % 2 == 0, eps_effective=0.01) for i in range(5)]
    s = summarize(recs)
    assert s.within_bound_fraction == 3 / 5
    assert s.median_max_error == pytest.approx(0.2)
    assert s.failures == 0
    recs.append(TrialRecord(5, 5, 10, failure="boom"))
    assert summarize(recs).failures == 1


def test_scenario_validation_names_the_field():
    with pytest.raises(ValueError, match=r"gaps\[1\]"):
        small(gaps=(1.0, 0.0))
    with pytest.raises(ValueError, match="K_MAX"):
        small(gaps=(1.0,) * 12)
    with pytest.raises(ValueError, match="delta"):
        small(delta=1.0)
    with pytest.raises(ValueError, match="trials"):
        small(trials=0)
    with pytest.raises(ValueError, match="missing field 'delta'"):
        scenario_from_dict({"name": "x", "gaps": [1], "epsilon": 0.1, "trials": 1, "base_seed": 0})
    with pytest.raises(ValueError, match="unknown token"):
        scenario_from_dict({"name": "x", "gaps": ["eps3"], "epsilon": 0.1, "delta": 0.1, "trials": 1, "base_seed": 0})


def test_gap_tokens_and_centering():
    s = scenario_from_dict(
        {"name": "x", "gaps": ["eps", 1, "eps^2", "eps2"], "epsilon": 0.1, "delta": 0.1, "trials": 1, "base_seed": 0}
    )
    assert s.gaps == pytest.approx((0.1, 1, 0.01, 0.01))
    assert abs(math.fsum(s.mixture().means)) <= 1e-15
    assert s.k == 5


def test_computed_sample_count():
    s = small(gaps=(3.0,), epsilon=0.5, delta=0.1, n_override=None)
    assert s.sample_count() >= 1
    with pytest.raises(ValueError, match="impractical"):
        small(gaps=(0.1, 0.1, 0.1), epsilon=1e-3, n_override=None).sample_count()


def test_shipped_scenarios_load():
    a = load_scenario(SCENARIOS / "mixtureA.json")
    b = load_scenario(SCENARIOS / "mixtureB.json")
    assert (a.k, b.k) == (7, 7)
    assert a.sample_count() == b.sample_count() and a.trials == b.trials == 30
    assert b.gaps[-1] == pytest.approx(0.01)
    for p in SCENARIOS.glob("*.json"):
        assert load_scenario(p).name == json.loads(p.read_text())["name"]
