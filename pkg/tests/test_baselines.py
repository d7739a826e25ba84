import math

import numpy as np
import pytest

from eventf1.baselines import null_baseline_scores, random_baseline, subject_random_baseline
from eventf1.metrics import MetricSpec, pointwise_counts
from eventf1.series import WindowSpec, threshold_predictions


def test_random_baseline_is_deterministic():
    a = random_baseline(5, rate=4, seed=123)
    b = random_baseline(5, rate=4, seed=123)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, random_baseline(5, rate=4, seed=124).values)
    assert a.rate == 4


def test_subject_streams_are_independent_of_other_subjects():
    a = subject_random_baseline("s01", 100, 4, seed=7)
    b = subject_random_baseline("s02", 100, 4, seed=7)
    assert not np.array_equal(a.values, b.values)
    assert np.array_equal(a.values, subject_random_baseline("s01", 100, 4, seed=7).values)


@pytest.mark.parametrize("delta, rate", [(0.501, 0.499), (0.71, 0.29)])
def test_positive_rate_after_threshold(delta, rate):
    n = 10**6
    pos = threshold_predictions(random_baseline(n, seed=11), delta).values.mean()
    assert abs(pos - rate) <= 0.002
    # 3 sigma statistical check
    assert abs(pos - (1 - delta)) <= 3 * math.sqrt(delta * (1 - delta) / n)


def test_random_precision_tracks_prevalence():
    rng = np.random.default_rng(5)
    n, rho = 200_000, 0.3
    y = rng.random(n) < rho
    yhat = threshold_predictions(random_baseline(n, seed=2), 0.5).values
    c = pointwise_counts(y, yhat)
    precision = c.tp / (c.tp + c.fp)
    sigma = math.sqrt(rho * (1 - rho) / (c.tp + c.fp))
    assert abs(precision - rho) <= 4 * sigma


def test_null_baseline_scores():
    specs = [MetricSpec.pointwise(), MetricSpec.windowed(WindowSpec(30)), MetricSpec.pa(0)]
    res = null_baseline_scores(specs)
    assert [r.f_score for r in res] == [0.0, 0.0, 0.0]
    assert [r.counts.regime for r in res] == ["pointwise", "windowed", "pa_k"]
    assert all(r.precision_undefined and r.recall_undefined for r in res)
    assert null_baseline_scores([MetricSpec.pointwise()])[0].f_score == 0
    with pytest.raises(ValueError):
        null_baseline_scores([])
