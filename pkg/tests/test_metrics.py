import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from eventf1.metrics import (
    ConfusionCounts,
    MetricSpec,
    batch_counts,
    compute_metric,
    derive_metric,
    evaluate_subject,
    f_beta,
    pa_counts,
    pointwise_counts,
    window_counts,
)
from eventf1.series import LabelSeries, ProbabilitySeries, SubjectRecord, WindowSpec


@st.composite
def pairs(draw, max_size=40):
    n = draw(st.integers(1, max_size))
    y = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    yhat = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return y, yhat


# -- pointwise -------------------------------------------------------------


@pytest.mark.parametrize(
    "y, yhat, expected",
    [
        ([0, 1, 0, 0], [0, 1, 0, 0], (1, 0, 0)),
        ([0, 1, 0, 0, 0], [0, 0, 1, 0, 0], (0, 1, 1)),
        ([1, 1, 1, 1, 0], [1, 0, 0, 0, 0], (1, 0, 3)),
    ],
)
def test_pointwise_examples(y, yhat, expected):
    assert pointwise_counts(y, yhat).as_tuple() == expected


def test_length_mismatch_is_an_error():
    with pytest.raises(ValueError, match="malformed"):
        pointwise_counts([0, 1], [0, 1, 0])
    with pytest.raises(ValueError, match="malformed"):
        window_counts([0, 1], [0, 1, 0], 1)


@given(pairs())
def test_pointwise_totals(p):
    y, yhat = p
    c = pointwise_counts(y, yhat)
    assert c.tp + c.fn == sum(y)
    assert c.tp + c.fp == sum(yhat)


# -- point adjusted --------------------------------------------------------


def test_pa_examples():
    y, yhat = [1, 1, 1, 1, 0], [1, 0, 0, 0, 0]
    c0 = pa_counts(y, yhat, 0)
    assert c0.as_tuple() == (4, 0, 0)
    assert derive_metric(c0).f_score == 1.0
    c50 = pa_counts(y, yhat, 0.5)
    assert c50.as_tuple() == (1, 0, 3)
    assert derive_metric(c50).f_score == pytest.approx(0.4, abs=1e-12)


def test_pa_zero_does_not_credit_unhit_segments():
    assert pa_counts([1, 1, 0, 1], [0, 0, 0, 1], 0).as_tuple() == (1, 0, 2)


def test_pa_fraction_boundary():
    # 1 of 4 hit: exactly K = 0.25 credits the segment
    assert pa_counts([1, 1, 1, 1], [0, 1, 0, 0], 0.25).as_tuple() == (4, 0, 0)
    assert pa_counts([1, 1, 1, 1], [0, 1, 0, 0], 0.26).as_tuple() == (1, 0, 3)


@given(pairs(), st.sampled_from([0, 0.1, 0.25, 1 / 3, 0.5, 0.75, 1]))
def test_pa_matches_oracle(p, k):
    y, yhat = p
    assert pa_counts(y, yhat, k).as_tuple() == oracles.point_adjusted(y, yhat, k)


@given(pairs())
def test_pa_endpoints(p):
    y, yhat = p
    assert pa_counts(y, yhat, 1).as_tuple() == pointwise_counts(y, yhat).as_tuple()
    assert pa_counts(y, yhat, 0).as_tuple() == oracles.point_adjusted(y, yhat, 0)


# -- windowed --------------------------------------------------------------


@pytest.mark.parametrize(
    "y, yhat, r, expected",
    [
        ([0, 1, 0, 0, 0], [0, 0, 1, 0, 0], 1, (1, 0, 0)),
        ([0, 1, 0, 0, 0], [0, 0, 1, 0, 0], 0, (0, 1, 1)),
        ([1] + [0] * 9, [0] * 9 + [1], 4, (0, 1, 1)),
    ],
)
def test_window_examples(y, yhat, r, expected):
    assert window_counts(y, yhat, r).as_tuple() == expected


def test_window_spec_uses_series_rate():
    y = LabelSeries([1] + [0] * 11, rate=4)
    yhat = LabelSeries([0] * 8 + [1] + [0] * 3, rate=4)
    assert window_counts(y, yhat, WindowSpec(2.0)).as_tuple() == (1, 0, 0)  # radius 8 samples
    assert window_counts(y, yhat, WindowSpec(2.0, "span")).as_tuple() == (0, 1, 1)  # radius 4
    with pytest.raises(ValueError):
        window_counts([1, 0], [0, 1], WindowSpec(1.0))


@given(pairs(), st.integers(0, 6))
def test_window_matches_oracle(p, r):
    y, yhat = p
    assert window_counts(y, yhat, r).as_tuple() == oracles.window(y, yhat, r)


@given(pairs())
def test_window_zero_equals_pointwise(p):
    y, yhat = p
    assert window_counts(y, yhat, 0).as_tuple() == pointwise_counts(y, yhat).as_tuple()


@given(pairs(), st.integers(0, 8), st.integers(0, 8))
def test_window_monotone_in_radius(p, r1, r2):
    y, yhat = p
    r1, r2 = sorted((r1, r2))
    a, b = window_counts(y, yhat, r1), window_counts(y, yhat, r2)
    assert a.tp <= b.tp and a.fp >= b.fp and a.fn >= b.fn
    ma, mb = derive_metric(a), derive_metric(b)
    assert ma.precision <= mb.precision + 1e-12
    assert ma.recall <= mb.recall + 1e-12
    assert ma.f_score <= mb.f_score + 1e-12


@given(pairs(), st.integers(0, 5))
def test_window_swap_duality(p, r):
    y, yhat = p
    assert window_counts(y, yhat, r).fp == window_counts(yhat, y, r).fn


# -- batched kernels -------------------------------------------------------


def test_batch_counts_match_scalar():
    rng = np.random.default_rng(3)
    y = rng.random((50, 30)) < 0.3
    yhat = rng.random((50, 30)) < 0.2
    for spec in (MetricSpec.pointwise(), MetricSpec.pa(0.5), MetricSpec.pa(0), MetricSpec.windowed(2.0)):
        batch = batch_counts(y, yhat, spec, rate=1.0)
        assert batch.shape == (50, 3)
        for i in range(50):
            assert tuple(batch[i]) == compute_metric(y[i], yhat[i], spec, rate=1.0).counts.as_tuple()


def test_pa_batch_segments_do_not_leak_across_rows():
    y = np.array([[0, 0, 1], [1, 1, 0]], dtype=bool)
    yhat = np.array([[0, 0, 1], [0, 0, 0]], dtype=bool)
    assert batch_counts(y, yhat, MetricSpec.pa(0)).tolist() == [[1, 0, 0], [0, 0, 2]]


# -- derived metrics -------------------------------------------------------


@pytest.mark.parametrize(
    "p, r, beta, expected",
    [(1, 1, 1, 1.0), (1, 0.25, 1, 0.4), (0.5, 1, 2, 5 * 0.5 / (4 * 0.5 + 1)), (0, 0, 1, 0.0)],
)
def test_f_beta(p, r, beta, expected):
    assert f_beta(p, r, beta) == pytest.approx(expected, abs=1e-12)


def test_derive_metric_examples():
    m = derive_metric(ConfusionCounts(1, 0, 0))
    assert (m.precision, m.recall, m.f_score, m.fdr) == (1.0, 1.0, 1.0, 0.0)
    m = derive_metric(ConfusionCounts(0, 1, 1))
    assert (m.precision, m.recall, m.f_score, m.fdr) == (0.0, 0.0, 0.0, 1.0)
    assert not m.precision_undefined and not m.recall_undefined
    m = derive_metric(ConfusionCounts(4, 0, 0, "pa_k"), spec=MetricSpec.pa(0))
    assert m.f_score == 1.0


def test_derive_metric_undefined_flags():
    m = derive_metric(ConfusionCounts(0, 0, 3))
    assert m.precision_undefined and not m.recall_undefined and m.f_score == 0
    m = derive_metric(ConfusionCounts(0, 0, 0))
    assert m.degenerate_empty and m.precision_undefined and m.recall_undefined and m.f_score == 0


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.sampled_from([0.5, 1, 2, 3.7]))
def test_derived_ranges(tp, fp, fn, beta):
    m = derive_metric(ConfusionCounts(tp, fp, fn), beta)
    for v in (m.precision, m.recall, m.fdr, m.f_score):
        assert 0 <= v <= 1
    if not m.precision_undefined:
        assert m.fdr == pytest.approx(1 - m.precision)


def test_metric_spec_contract():
    with pytest.raises(ValueError):
        MetricSpec("pa_k")
    with pytest.raises(ValueError):
        MetricSpec("pointwise", k=0.5)
    with pytest.raises(ValueError):
        MetricSpec("windowed")
    with pytest.raises(ValueError):
        MetricSpec.pointwise(beta=0)
    names = [s.name for s in (MetricSpec.pointwise(), MetricSpec.pointwise(0.5), MetricSpec.pa(0),
                              MetricSpec.pa(0.25), MetricSpec.windowed(WindowSpec(1200)))]
    assert names == ["F1", "F_0.5", "F1_pa", "F1_pa25%", "F1_w,20min"]


# -- per-subject evaluation ------------------------------------------------

ALL_SPECS = [MetricSpec.pointwise(), MetricSpec.pointwise(0.5), MetricSpec.pointwise(2),
             MetricSpec.pa(0), MetricSpec.pa(0.5), MetricSpec.windowed(WindowSpec(10))]


def test_evaluate_subject_perfect_match():
    y = LabelSeries([0, 0, 1, 1, 0, 0], rate=1)
    rec = SubjectRecord("s", y, predictions=y)
    assert [r.f_score for r in evaluate_subject(rec, ALL_SPECS)] == [1.0] * len(ALL_SPECS)


def test_evaluate_subject_empty_is_flagged():
    z = LabelSeries([0] * 8, rate=1)
    res = evaluate_subject(SubjectRecord("s", z, predictions=z), ALL_SPECS)
    assert all(r.degenerate_empty and r.f_score == 0 for r in res)


def test_evaluate_subject_near_miss_thresholds_probabilities():
    y = np.zeros(40, dtype=int)
    y[20] = 1
    p = np.full(40, 0.1)
    p[25] = 0.9
    rec = SubjectRecord("s", LabelSeries(y, 1), probabilities=ProbabilitySeries(p, 1))
    f1, f1w = evaluate_subject(rec, [MetricSpec.pointwise(), MetricSpec.windowed(10)], delta=0.501)
    assert f1.f_score == 0 and f1w.f_score == 1
    with pytest.raises(ValueError):
        evaluate_subject(rec, [])


@settings(max_examples=50)
@given(pairs(), st.integers(0, 4))
def test_evaluate_subject_preserves_order(p, r):
    y, yhat = p
    rec = SubjectRecord("s", LabelSeries(y), predictions=LabelSeries(yhat))
    specs = [MetricSpec.windowed(float(r)), MetricSpec.pa(0.5), MetricSpec.pointwise()]
    assert [m.spec for m in evaluate_subject(rec, specs)] == specs
