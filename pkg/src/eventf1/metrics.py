"""Confusion counts under pointwise, point-adjusted (pa%K) and windowed regimes.

All three counting kernels operate along the last axis, so a stack of
series of shape ``(m, T)`` is evaluated in one call via :func:`batch_counts`.
The scalar entry points (:func:`pointwise_counts`, :func:`pa_counts`,
:func:`window_counts`) wrap them for a single pair of series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .series import (
    ArrayLike,
    LabelSeries,
    SubjectRecord,
    WindowSpec,
    threshold_predictions,
)

Family = Literal["pointwise", "pa_k", "windowed"]
FAMILIES: tuple[str, ...] = ("pointwise", "pa_k", "windowed")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    regime: Family = "pointwise"

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        if self.regime != other.regime:
            raise ValueError(f"cannot add {self.regime} and {other.regime} counts")
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.regime)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.tp, self.fp, self.fn)


@dataclass(frozen=True)
class MetricSpec:
    """Which F-metric to compute.

    ``k`` is only meaningful for ``pa_k`` and ``window`` only for ``windowed``.
    """

    family: Family
    beta: float = 1.0
    k: Optional[float] = None
    window: Optional[WindowSpec] = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown metric family {self.family!r}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if (self.k is not None) != (self.family == "pa_k"):
            raise ValueError("k must be given exactly when family is 'pa_k'")
        if self.k is not None and not 0 <= self.k <= 1:
            raise ValueError(f"k must lie in [0, 1], got {self.k}")
        if (self.window is not None) != (self.family == "windowed"):
            raise ValueError("window must be given exactly when family is 'windowed'")

    @classmethod
    def pointwise(cls, beta: float = 1.0) -> "MetricSpec":
        return cls("pointwise", beta=beta)

    @classmethod
    def pa(cls, k: float = 0.0, beta: float = 1.0) -> "MetricSpec":
        return cls("pa_k", beta=beta, k=k)

    @classmethod
    def windowed(cls, window: Union[WindowSpec, float], beta: float = 1.0) -> "MetricSpec":
        if not isinstance(window, WindowSpec):
            window = WindowSpec(float(window))
        return cls("windowed", beta=beta, window=window)

    @property
    def name(self) -> str:
        """Display name, e.g. ``F1``, ``F_0.5``, ``F1_pa``, ``F1_pa50%``, ``F1_w,10s``."""
        head = "F1" if self.beta == 1 else f"F_{self.beta:g}"
        if self.family == "pointwise":
            return head
        if self.family == "pa_k":
            return f"{head}_pa" if self.k == 0 else f"{head}_pa{self.k * 100:g}%"
        return f"{head}_w,{self.window.name}"

    @property
    def param(self) -> str:
        """The family hyperparameter rendered as text (empty for pointwise)."""
        if self.family == "pa_k":
            return f"K={self.k:g}"
        if self.family == "windowed":
            suffix = "" if self.window.interpretation == "radius" else " span"
            return f"w={self.window.name}{suffix}"
        return ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "family": self.family, "beta": self.beta}
        if self.k is not None:
            out["k"] = self.k
        if self.window is not None:
            out["window_seconds"] = self.window.duration
            out["window_interpretation"] = self.window.interpretation
        return out


@dataclass(frozen=True)
class MetricResult:
    """Precision, recall, FDR and F-score derived from one set of counts.

    Undefined ratios (zero denominator) are reported as 0.0 and flagged;
    ``fdr`` shares the precision denominator and therefore its flag.
    """

    spec: MetricSpec
    precision: float
    recall: float
    fdr: float
    f_score: float
    counts: ConfusionCounts
    precision_undefined: bool = False
    recall_undefined: bool = False
    degenerate_empty: bool = False

    def to_dict(self) -> dict:
        return {
            "metric": self.spec.name,
            "tp": self.counts.tp,
            "fp": self.counts.fp,
            "fn": self.counts.fn,
            "precision": self.precision,
            "recall": self.recall,
            "fdr": self.fdr,
            "f_score": self.f_score,
            "precision_undefined": self.precision_undefined,
            "recall_undefined": self.recall_undefined,
            "degenerate_empty": self.degenerate_empty,
        }


def _pair(y: Union[LabelSeries, ArrayLike], yhat: Union[LabelSeries, ArrayLike]) -> tuple[np.ndarray, np.ndarray]:
    a = y.values if isinstance(y, LabelSeries) else np.asarray(y).astype(bool)
    b = yhat.values if isinstance(yhat, LabelSeries) else np.asarray(yhat).astype(bool)
    if a.shape != b.shape:
        raise ValueError(f"malformed subject record: truth shape {a.shape} != prediction shape {b.shape}")
    if a.ndim == 0 or a.shape[-1] == 0:
        raise ValueError("series must contain at least one sample")
    return a, b


def _pointwise_kernel(y: np.ndarray, yhat: np.ndarray) -> np.ndarray:
    tp = np.count_nonzero(y & yhat, axis=-1)
    fp = np.count_nonzero(~y & yhat, axis=-1)
    fn = np.count_nonzero(y & ~yhat, axis=-1)
    return np.stack([tp, fp, fn], axis=-1)


def _pa_kernel(y: np.ndarray, yhat: np.ndarray, k: float) -> np.ndarray:
    lead = y.shape[:-1]
    length = y.shape[-1]
    y2 = y.reshape(-1, length)
    p2 = yhat.reshape(-1, length)
    rows = y2.shape[0]

    # segment starts: a one whose left neighbour (within the same row) is zero
    prev = np.zeros_like(y2)
    prev[:, 1:] = y2[:, :-1]
    starts = y2 & ~prev
    seg_id = np.cumsum(starts.ravel()).reshape(y2.shape) - 1
    pos = y2.ravel()
    ids = seg_id.ravel()[pos]
    n_seg = int(starts.sum())

    fp = np.count_nonzero(~y2 & p2, axis=-1)
    if n_seg == 0:
        zero = np.zeros(rows, dtype=np.int64)
        return np.stack([zero, fp, zero], axis=-1).reshape(*lead, 3)

    seg_len = np.bincount(ids, minlength=n_seg)
    seg_hits = np.bincount(ids, weights=p2.ravel()[pos], minlength=n_seg).astype(np.int64)
    frac = seg_hits / seg_len
    adjusted = (frac >= k) & (seg_hits > 0)
    seg_tp = np.where(adjusted, seg_len, seg_hits)

    seg_row = np.repeat(np.arange(rows), starts.sum(axis=-1))
    tp = np.bincount(seg_row, weights=seg_tp, minlength=rows).astype(np.int64)
    fn = np.bincount(seg_row, weights=seg_len - seg_tp, minlength=rows).astype(np.int64)
    return np.stack([tp, fp, fn], axis=-1).reshape(*lead, 3)


def _any_within(x: np.ndarray, radius: int) -> np.ndarray:
    """For every index t: does x have a one in ``[t - radius, t + radius]``?"""
    length = x.shape[-1]
    if radius == 0:
        return x.copy()
    csum = np.zeros(x.shape[:-1] + (length + 1,), dtype=np.int64)
    np.cumsum(x, axis=-1, out=csum[..., 1:])
    t = np.arange(length)
    lo = np.maximum(t - radius, 0)
    hi = np.minimum(t + radius, length - 1) + 1
    return (csum[..., hi] - csum[..., lo]) > 0


def _window_kernel(y: np.ndarray, yhat: np.ndarray, radius: int) -> np.ndarray:
    truth_near = _any_within(y, radius)
    pred_near = _any_within(yhat, radius)
    tp = np.count_nonzero(yhat & truth_near, axis=-1)
    fp = np.count_nonzero(yhat & ~truth_near, axis=-1)
    fn = np.count_nonzero(y & ~pred_near, axis=-1)
    return np.stack([tp, fp, fn], axis=-1)


def _resolve_radius(window: Union[WindowSpec, int], rate: Optional[float]) -> int:
    if isinstance(window, WindowSpec):
        if rate is None:
            raise ValueError("a sampling rate is needed to convert a WindowSpec to samples")
        return window.radius(rate)
    radius = int(window)
    if radius < 0 or radius != window:
        raise ValueError(f"window radius must be a non-negative integer, got {window}")
    return radius


def _rate_of(*series) -> Optional[float]:
    for s in series:
        if isinstance(s, LabelSeries):
            return s.rate
    return None


def _to_counts(row: np.ndarray, regime: Family) -> ConfusionCounts:
    return ConfusionCounts(int(row[0]), int(row[1]), int(row[2]), regime)


def pointwise_counts(y, yhat) -> ConfusionCounts:
    a, b = _pair(y, yhat)
    if a.ndim != 1:
        raise ValueError("use batch_counts for stacked series")
    return _to_counts(_pointwise_kernel(a, b), "pointwise")


def pa_counts(y, yhat, k: float) -> ConfusionCounts:
    """Point-adjusted counts.

    A true segment is credited in full when the fraction of its samples
    predicted positive is at least ``k`` and at least one sample is hit.
    ``k=0`` is classic point adjustment and ``k=1`` reduces to pointwise counts.
    False positives are never adjusted.
    """
    if not 0 <= k <= 1:
        raise ValueError(f"k must lie in [0, 1], got {k}")
    a, b = _pair(y, yhat)
    if a.ndim != 1:
        raise ValueError("use batch_counts for stacked series")
    return _to_counts(_pa_kernel(a, b, k), "pa_k")


def window_counts(y, yhat, window: Union[WindowSpec, int], rate: Optional[float] = None) -> ConfusionCounts:
    """Temporally tolerant counts.

    A predicted positive is a true positive if any true event lies within
    the window around it, otherwise a false positive. A true event is a
    false negative if no prediction lies within the window around it.

    ``window`` is either a :class:`WindowSpec` (converted with ``rate``, or
    the rate carried by a :class:`LabelSeries` argument) or an integer
    radius in samples.
    """
    a, b = _pair(y, yhat)
    if a.ndim != 1:
        raise ValueError("use batch_counts for stacked series")
    radius = _resolve_radius(window, rate if rate is not None else _rate_of(y, yhat))
    return _to_counts(_window_kernel(a, b, radius), "windowed")


def batch_counts(y, yhat, spec: MetricSpec, rate: Optional[float] = None) -> np.ndarray:
    """Counts for stacked series; returns an int array of shape ``(..., 3)`` = (tp, fp, fn)."""
    a, b = _pair(y, yhat)
    if spec.family == "pointwise":
        return _pointwise_kernel(a, b)
    if spec.family == "pa_k":
        return _pa_kernel(a, b, spec.k)
    return _window_kernel(a, b, _resolve_radius(spec.window, rate if rate is not None else _rate_of(y, yhat)))


def counts_for(y, yhat, spec: MetricSpec, rate: Optional[float] = None) -> ConfusionCounts:
    """Dispatch to the counting regime named by ``spec``."""
    if spec.family == "pointwise":
        return pointwise_counts(y, yhat)
    if spec.family == "pa_k":
        return pa_counts(y, yhat, spec.k)
    return window_counts(y, yhat, spec.window, rate=rate)


def f_beta(precision: float, recall: float, beta: float = 1.0) -> float:
    """Weighted harmonic mean of precision and recall; 0 when both vanish."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    b2 = beta * beta
    denom = b2 * precision + recall
    if denom == 0:
        return 0.0
    return (1 + b2) * precision * recall / denom


def derive_metric(counts: ConfusionCounts, beta: float = 1.0, spec: Optional[MetricSpec] = None) -> MetricResult:
    if spec is None:
        spec = _default_spec(counts.regime, beta)
    tp, fp, fn = counts.tp, counts.fp, counts.fn
    p_undef = tp + fp == 0
    r_undef = tp + fn == 0
    precision = 0.0 if p_undef else tp / (tp + fp)
    recall = 0.0 if r_undef else tp / (tp + fn)
    fdr = 0.0 if p_undef else fp / (tp + fp)
    return MetricResult(
        spec=spec,
        precision=precision,
        recall=recall,
        fdr=fdr,
        f_score=f_beta(precision, recall, beta),
        counts=counts,
        precision_undefined=p_undef,
        recall_undefined=r_undef,
        degenerate_empty=tp == fp == fn == 0,
    )


def _default_spec(regime: Family, beta: float) -> MetricSpec:
    # Only used for display when derive_metric is called on bare counts.
    if regime == "pa_k":
        return MetricSpec.pa(0.0, beta=beta)
    if regime == "windowed":
        return MetricSpec.windowed(WindowSpec(0.0), beta=beta)
    return MetricSpec.pointwise(beta)


def compute_metric(y, yhat, spec: MetricSpec, rate: Optional[float] = None) -> MetricResult:
    return derive_metric(counts_for(y, yhat, spec, rate=rate), spec.beta, spec)


def evaluate_subject(record: SubjectRecord, specs: Sequence[MetricSpec], delta: float = 0.5) -> list[MetricResult]:
    """Score one subject under every spec, in the order given.

    Probabilities are thresholded at ``delta`` unless hard predictions are present.
    """
    if not specs:
        raise ValueError("at least one metric spec is required")
    yhat = record.predictions
    if yhat is None:
        yhat = threshold_predictions(record.probabilities, delta)
    return [compute_metric(record.truth, yhat, spec) for spec in specs]
