"""Label and probability series, event segments and window arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

import numpy as np

ArrayLike = Union[Sequence[float], np.ndarray]
WindowMode = Literal["radius", "span"]


def _as_binary(values: ArrayLike, name: str = "labels") -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0 and 1")
    return arr.astype(bool)


@dataclass(frozen=True)
class LabelSeries:
    """Binary event indicators sampled at ``rate`` Hz."""

    values: np.ndarray
    rate: float = 1.0

    def __post_init__(self) -> None:
        arr = _as_binary(self.values)
        if arr.size < 1:
            raise ValueError("a label series needs at least one sample")
        if not self.rate > 0:
            raise ValueError(f"rate must be positive, got {self.rate}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def n_positive(self) -> int:
        return int(self.values.sum())


@dataclass(frozen=True)
class ProbabilitySeries:
    """Per-sample event probabilities in [0, 1]."""

    values: np.ndarray
    rate: float = 1.0

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("probabilities must be a non-empty 1-D sequence")
        if np.isnan(arr).any() or (arr < 0).any() or (arr > 1).any():
            raise ValueError("probabilities must lie within [0, 1]")
        if not self.rate > 0:
            raise ValueError(f"rate must be positive, got {self.rate}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class EventSegment:
    """A maximal run of positive samples; both ends inclusive."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid segment [{self.start}, {self.end}]")

    def __len__(self) -> int:
        return self.end - self.start + 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class SubjectRecord:
    """Ground truth plus model output for one subject.

    At least one of ``probabilities`` and ``predictions`` must be given.
    When both are present, ``predictions`` wins.
    """

    subject_id: str
    truth: LabelSeries
    probabilities: Optional[ProbabilitySeries] = None
    predictions: Optional[LabelSeries] = None

    def __post_init__(self) -> None:
        if self.probabilities is None and self.predictions is None:
            raise ValueError(f"subject {self.subject_id!r}: need probabilities or predictions")
        for other in (self.probabilities, self.predictions):
            if other is None:
                continue
            if len(other) != len(self.truth):
                raise ValueError(
                    f"subject {self.subject_id!r}: length mismatch "
                    f"({len(self.truth)} labels vs {len(other)})"
                )
            if other.rate != self.truth.rate:
                raise ValueError(f"subject {self.subject_id!r}: rate mismatch")

    def __len__(self) -> int:
        return len(self.truth)


def seconds_to_samples(duration: float, rate: float) -> int:
    """Convert a duration to a sample count, rounding halves up.

    The product is taken on the decimal representations so that e.g.
    ``0.625 s @ 4 Hz`` is exactly 2.5 samples and rounds to 3.
    """
    if duration < 0:
        raise ValueError(f"duration must be non-negative, got {duration}")
    if not rate > 0:
        raise ValueError(f"rate must be positive, got {rate}")
    product = Fraction(str(duration)) * Fraction(str(rate))
    return math.floor(product + Fraction(1, 2))


@dataclass(frozen=True)
class WindowSpec:
    """Temporal tolerance window.

    ``duration`` is in seconds. Under ``"radius"`` the window around ``t``
    reaches ``duration`` seconds to either side; under ``"span"`` the whole
    window covers ``duration`` seconds, i.e. half of it on each side.
    """

    duration: float
    interpretation: WindowMode = "radius"
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.duration < 0:
            raise ValueError(f"window duration must be non-negative, got {self.duration}")
        if self.interpretation not in ("radius", "span"):
            raise ValueError(f"unknown window interpretation {self.interpretation!r}")

    def samples(self, rate: float) -> int:
        return seconds_to_samples(self.duration, rate)

    def radius(self, rate: float) -> int:
        """Number of samples the window extends on each side of ``t``."""
        n = self.samples(rate)
        return n if self.interpretation == "radius" else n // 2

    @property
    def name(self) -> str:
        return self.label if self.label is not None else format_duration(self.duration)


def format_duration(seconds: float) -> str:
    """Short human label, e.g. ``10s``, ``5min``, ``1h30min``."""
    if seconds >= 60 and float(seconds) % 60 == 0:
        minutes = int(seconds // 60)
        return f"{minutes}min"
    if float(seconds).is_integer():
        return f"{int(seconds)}s"
    return f"{seconds:g}s"


_UNITS = {"ms": 0.001, "s": 1.0, "sec": 1.0, "min": 60.0, "m": 60.0, "h": 3600.0}


def parse_duration(text: str) -> float:
    """Parse ``"10s"``, ``"5min"``, ``"1.5h"`` or a bare number of seconds."""
    text = text.strip().lower()
    for unit in sorted(_UNITS, key=len, reverse=True):
        if text.endswith(unit):
            number = text[: -len(unit)]
            break
    else:
        unit, number = "s", text
    try:
        value = float(number) * _UNITS[unit]
    except ValueError:
        raise ValueError(f"cannot parse duration {text!r}") from None
    if value < 0:
        raise ValueError(f"duration must be non-negative: {text!r}")
    # 0.1 * 60 style products should still print cleanly
    return round(value, 9)


def extract_segments(labels: Union[LabelSeries, ArrayLike]) -> list[EventSegment]:
    """Return the maximal runs of consecutive ones, in order."""
    y = labels.values if isinstance(labels, LabelSeries) else _as_binary(labels)
    if not y.any():
        return []
    padded = np.concatenate(([False], y, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return [EventSegment(int(s), int(e)) for s, e in zip(starts, ends)]


def threshold_predictions(probs: Union[ProbabilitySeries, ArrayLike], delta: float) -> LabelSeries:
    """Binarise probabilities: a sample is an event iff ``p >= delta``."""
    if not 0 <= delta <= 1:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if not isinstance(probs, ProbabilitySeries):
        probs = ProbabilitySeries(probs)
    return LabelSeries((probs.values >= delta).astype(np.int8), rate=probs.rate)


def window_indices(t: int, radius: int, length: int) -> tuple[int, int]:
    """Inclusive index interval ``[t - radius, t + radius]`` clamped to the series."""
    if not 0 <= t < length:
        raise IndexError(f"t={t} outside series of length {length}")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return max(0, t - radius), min(length - 1, t + radius)


def window_interval(t: int, spec: WindowSpec, length: int, rate: float) -> tuple[int, int]:
    """:func:`window_indices` with the radius taken from a :class:`WindowSpec`."""
    return window_indices(t, spec.radius(rate), length)
