"""Six synthetic scenarios contrasting pointwise, point-adjusted and windowed F-metrics.

Each scenario carries the qualitative outcomes it is meant to demonstrate
as machine-checkable expectations. Series are sampled at 1 Hz, so a window
of ``w`` seconds is ``w`` time steps.
"""

from __future__ import annotations

import csv
import io
import operator
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .baselines import make_rng
from .metrics import MetricResult, MetricSpec, compute_metric
from .series import LabelSeries, WindowSpec

SCENARIO_IDS = (
    "perfect_match",
    "point_for_long_event",
    "fragmented_shifted",
    "near_miss",
    "window_over_point",
    "random_over_point",
)
EQ_TOL = 1e-9
SCENARIO_RATE = 1.0


@dataclass(frozen=True)
class Expectation:
    """``metric <op> bound``; ``bound`` is a number, another metric's name, or a (lo, hi) pair for ``between``."""

    metric: str
    op: str
    bound: Union[float, str, tuple[float, float]]

    def check(self, values: dict[str, float]) -> tuple[bool, float]:
        x = values[self.metric]
        if self.op == "between":
            lo, hi = self.bound
            return (lo + EQ_TOL < x < hi - EQ_TOL), x
        ref = values[self.bound] if isinstance(self.bound, str) else float(self.bound)
        if self.op == "==":
            return abs(x - ref) <= EQ_TOL, x
        cmp = {"<": operator.lt, ">": operator.gt, "<=": operator.le, ">=": operator.ge}[self.op]
        shift = {"<": -EQ_TOL, ">": EQ_TOL, "<=": EQ_TOL, ">=": -EQ_TOL}[self.op]
        return cmp(x, ref + shift), x

    def describe(self) -> str:
        if self.op == "between":
            return f"{self.bound[0]:g} < {self.metric} < {self.bound[1]:g}"
        bound = self.bound if isinstance(self.bound, str) else f"{self.bound:g}"
        return f"{self.metric} {self.op} {bound}"


@dataclass(frozen=True)
class Scenario:
    id: str
    truth: LabelSeries
    prediction: LabelSeries
    expectations: tuple[Expectation, ...] = field(default=())


def figure_metric_specs(window_steps: int = 10, betas: Sequence[float] = (0.5, 2),
                        k: Sequence[float] = (0, 0.5)) -> list[MetricSpec]:
    """F1, the F_beta variants, pa%K per ``k`` (K=0 is classic pa) and F1_w."""
    specs = [MetricSpec.pointwise()]
    specs += [MetricSpec.pointwise(b) for b in betas]
    specs += [MetricSpec.pa(kk) for kk in sorted(k, reverse=True)]
    specs.append(MetricSpec.windowed(WindowSpec(float(window_steps), label=f"{window_steps}steps")))
    return specs


def _series(length: int, *ranges: tuple[int, int]) -> np.ndarray:
    x = np.zeros(length, dtype=np.int8)
    for a, b in ranges:
        x[a:b + 1] = 1
    return x


def generate_scenario(id: str, length: int = 200, seed: int = 0, window_steps: int = 10) -> Scenario:
    """Build one scenario; deterministic in ``(id, length, seed)``.

    Layouts scale with ``length`` (minimum 100 samples) and keep every
    offset within ``window_steps`` of the truth, so the windowed metric
    can give credit.
    """
    if id not in SCENARIO_IDS:
        raise ValueError(f"unknown scenario {id!r}; expected one of {SCENARIO_IDS}")
    if length < 100:
        raise ValueError("scenarios need at least 100 samples")
    w = window_steps
    if not 2 <= w <= length // 10:
        raise ValueError("window_steps must lie in [2, length // 10]")
    mid = length // 2
    f1, wname = "F1", f"F1_w,{w}steps"
    low = 0.2

    if id == "perfect_match":
        y = _series(length, (mid - 10, mid + 9))
        yhat = y.copy()
        exp = [Expectation(m, "==", 1.0) for m in ("F1", "F_0.5", "F_2", "F1_pa50%", "F1_pa", wname)]
    elif id == "point_for_long_event":
        half = max(20, 2 * w)
        y = _series(length, (mid - half, mid + half - 1))
        yhat = _series(length, (mid, mid))
        exp = [
            Expectation("F1_pa", "==", 1.0),
            Expectation(f1, "<", low),
            Expectation("F_0.5", "<", low),
            Expectation("F_2", "<", low),
            Expectation("F1_pa50%", "<", low),
            Expectation(wname, "between", (0.0, 1.0)),
            Expectation(wname, ">", f1),
            Expectation("F1_pa", ">", wname),
        ]
    elif id == "fragmented_shifted":
        shift = max(1, w // 2 + 1)
        a, b = mid - 20, mid + 19
        gap = (mid - 1 + shift, mid + shift + 4)
        y = _series(length, (a, b))
        yhat = _series(length, (a + shift, gap[0] - 1), (gap[1] + 1, b + shift))
        exp = [Expectation(wname, "==", 1.0)] + [
            Expectation(m, "<", 1.0) for m in ("F1", "F_0.5", "F_2", "F1_pa50%", "F1_pa")
        ]
    elif id == "near_miss":
        y = _series(length, (mid, mid))
        yhat = _series(length, (mid + w // 2, mid + w // 2))
        exp = [Expectation(m, "==", 0.0) for m in ("F1", "F_0.5", "F_2", "F1_pa50%", "F1_pa")]
        exp.append(Expectation(wname, ">", 0.0))
    elif id == "window_over_point":
        y = _series(length, (mid, mid))
        yhat = _series(length, (mid - int(1.5 * w), mid + int(1.5 * w)))
        exp = [
            Expectation(wname, "between", (0.0, 1.0)),
            Expectation(wname, ">", f1),
            Expectation(f1, "<", low),
            Expectation("F1_pa", "<", low),
            Expectation("F1_pa50%", "<", low),
        ]
    else:  # random_over_point
        y = _series(length, (mid, mid))
        rng = make_rng(seed, 6)
        candidates = np.delete(np.arange(length), mid)
        picks = rng.choice(candidates, size=length // 10, replace=False)
        yhat = np.zeros(length, dtype=np.int8)
        yhat[picks] = 1
        if not yhat[mid - w:mid + w + 1].any():
            yhat[mid + w] = 1
        exp = [Expectation(m, "==", 0.0) for m in ("F1", "F_0.5", "F_2", "F1_pa50%", "F1_pa")]
        exp.append(Expectation(wname, "between", (0.0, 0.5)))

    return Scenario(
        id=id,
        truth=LabelSeries(y, SCENARIO_RATE),
        prediction=LabelSeries(yhat, SCENARIO_RATE),
        expectations=tuple(exp),
    )


@dataclass(frozen=True)
class AssertionOutcome:
    scenario: str
    description: str
    passed: bool
    observed: float


@dataclass
class SuiteReport:
    window_steps: int
    length: int
    seed: int
    metrics: list[str]
    results: dict[str, list[MetricResult]]
    outcomes: list[AssertionOutcome]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def values(self, scenario: str) -> dict[str, float]:
        return {r.spec.name: r.f_score for r in self.results[scenario]}

    def to_dict(self) -> dict:
        from . import SCHEMA_VERSION, __version__

        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "scenario_suite",
            "tool_version": __version__,
            "config": {"window_steps": self.window_steps, "length": self.length, "seed": self.seed},
            "metrics": self.metrics,
            "scenarios": [
                {
                    "id": sid,
                    "results": [r.to_dict() for r in res],
                    "assertions": [
                        {"check": o.description, "passed": o.passed, "observed": o.observed}
                        for o in self.outcomes if o.scenario == sid
                    ],
                }
                for sid, res in self.results.items()
            ],
            "passed": self.passed,
        }


def run_scenario_suite(window_steps: int = 10, betas: Sequence[float] = (0.5, 2),
                       k: Sequence[float] = (0, 0.5), length: int = 200, seed: int = 0) -> SuiteReport:
    """Evaluate every scenario and check its expectations. Failures are reported, not raised."""
    specs = figure_metric_specs(window_steps, betas, k)
    results: dict[str, list[MetricResult]] = {}
    outcomes: list[AssertionOutcome] = []
    for sid in SCENARIO_IDS:
        sc = generate_scenario(sid, length=length, seed=seed, window_steps=window_steps)
        res = [compute_metric(sc.truth, sc.prediction, s) for s in specs]
        results[sid] = res
        values = {r.spec.name: r.f_score for r in res}
        for e in sc.expectations:
            try:
                ok, observed = e.check(values)
            except KeyError:
                # expectation names a metric excluded by the chosen betas/k
                continue
            outcomes.append(AssertionOutcome(sid, e.describe(), ok, observed))
    return SuiteReport(window_steps, length, seed, [s.name for s in specs], results, outcomes)


def scenarios_to_csv(length: int = 200, seed: int = 0, window_steps: int = 10) -> str:
    """The scenario corpus in the ``subject_id,t,y,yhat`` input format (one subject per scenario)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["subject_id", "t", "y", "p", "yhat"])
    for sid in SCENARIO_IDS:
        sc = generate_scenario(sid, length=length, seed=seed, window_steps=window_steps)
        for t, (a, b) in enumerate(zip(sc.truth.values, sc.prediction.values)):
            writer.writerow([sid, t, int(a), "", int(b)])
    return buf.getvalue()
