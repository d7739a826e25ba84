"""End-to-end evaluation: model vs random and null baselines over all subjects."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .baselines import RNG_ALGORITHM, null_baseline_scores, subject_random_baseline
from .dataset import load_dataset
from .metrics import ConfusionCounts, MetricResult, MetricSpec, derive_metric, evaluate_subject
from .series import SubjectRecord, WindowSpec, threshold_predictions
from .stats import DEFAULT_CAP, SignificanceCell, combined_significance

DEFAULT_WINDOWS = (10.0, 30.0, 60.0, 300.0, 1200.0, 3600.0)
DEFAULT_K = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_BETAS = (0.5, 1.0, 2.0)
SOURCES = ("model", "random", "null")


@dataclass
class EvalConfig:
    input: Optional[str] = None
    input_format: Optional[str] = None
    delta: float = 0.5
    windows: Sequence[WindowSpec] = field(default_factory=lambda: [WindowSpec(w) for w in DEFAULT_WINDOWS])
    k_values: Sequence[float] = DEFAULT_K
    betas: Sequence[float] = DEFAULT_BETAS
    alpha: float = 0.05
    seed: int = 0
    rate: float = 4.0
    output_format: str = "json"
    cap: int = DEFAULT_CAP
    dataset_name: str = "dataset"

    def __post_init__(self) -> None:
        if not 0 <= self.delta <= 1:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta}")
        if not self.windows:
            raise ValueError("at least one window is required")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.cap < 1:
            raise ValueError("cap must be positive")

    def metric_specs(self) -> list[MetricSpec]:
        """Pointwise per beta (F1 first), pa%K per K, then F1_w per window."""
        betas = sorted(set(self.betas), key=lambda b: (b != 1, b))
        specs = [MetricSpec.pointwise(b) for b in betas]
        specs += [MetricSpec.pa(k) for k in self.k_values]
        specs += [MetricSpec.windowed(w) for w in self.windows]
        return specs

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "input_format": self.input_format,
            "dataset_name": self.dataset_name,
            "delta": self.delta,
            "windows": [{"seconds": w.duration, "interpretation": w.interpretation} for w in self.windows],
            "k_values": list(self.k_values),
            "betas": list(self.betas),
            "alpha": self.alpha,
            "seed": self.seed,
            "rate": self.rate,
            "cap": self.cap,
        }


@dataclass
class EvaluationReport:
    config: EvalConfig
    specs: list[MetricSpec]
    subject_ids: list[str]
    per_subject: dict[str, dict[str, list[MetricResult]]]
    pooled: dict[str, list[MetricResult]]
    significance: list[SignificanceCell]
    lengths: dict[str, int] = field(default_factory=dict)

    def scores(self, source: str, metric: str) -> dict[str, float]:
        i = self.metric_index(metric)
        return {sid: self.per_subject[sid][source][i].f_score for sid in self.subject_ids}

    def metric_index(self, metric: str) -> int:
        for i, s in enumerate(self.specs):
            if s.name == metric:
                return i
        raise KeyError(metric)

    def to_dict(self) -> dict:
        from . import SCHEMA_VERSION, __version__

        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "evaluation",
            "tool_version": __version__,
            "rng_algorithm": RNG_ALGORITHM,
            "seed": self.config.seed,
            "config": self.config.to_dict(),
            "metrics": [s.to_dict() for s in self.specs],
            "subjects": [
                {
                    "subject_id": sid,
                    "length": self.lengths.get(sid),
                    **{src: [r.to_dict() for r in self.per_subject[sid][src]] for src in ("model", "random")},
                }
                for sid in self.subject_ids
            ],
            "pooled": {src: [r.to_dict() for r in self.pooled[src]] for src in SOURCES},
            "significance": [
                {"metric": s.name, **cell.to_dict()} for s, cell in zip(self.specs, self.significance)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _pool(results: list[list[MetricResult]], specs: list[MetricSpec]) -> list[MetricResult]:
    pooled = []
    for i, spec in enumerate(specs):
        total = ConfusionCounts(0, 0, 0, spec.family)
        for per in results:
            total = total + per[i].counts
        pooled.append(derive_metric(total, spec.beta, spec))
    return pooled


def evaluate_records(records: Sequence[SubjectRecord], config: EvalConfig) -> EvaluationReport:
    if not records:
        raise ValueError("need at least one subject")
    ids = [r.subject_id for r in records]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate subject ids")
    specs = config.metric_specs()
    ordered = sorted(records, key=lambda r: r.subject_id)

    per_subject: dict[str, dict[str, list[MetricResult]]] = {}
    for rec in ordered:
        truth = rec.truth
        model = evaluate_subject(rec, specs, config.delta)
        probs = subject_random_baseline(rec.subject_id, len(truth), truth.rate, config.seed)
        rand_rec = SubjectRecord(rec.subject_id, truth, predictions=threshold_predictions(probs, config.delta))
        random = evaluate_subject(rand_rec, specs)
        per_subject[rec.subject_id] = {"model": model, "random": random, "null": null_baseline_scores(specs)}

    subject_ids = [r.subject_id for r in ordered]
    pooled = {src: _pool([per_subject[s][src] for s in subject_ids], specs) for src in ("model", "random")}
    pooled["null"] = null_baseline_scores(specs)

    significance = []
    for i, spec in enumerate(specs):
        model_scores = {s: per_subject[s]["model"][i].f_score for s in subject_ids}
        random_scores = {s: per_subject[s]["random"][i].f_score for s in subject_ids}
        null_scores = {s: per_subject[s]["null"][i].f_score for s in subject_ids}
        significance.append(
            combined_significance(model_scores, random_scores, null_scores,
                                  alpha=config.alpha, cap=config.cap, seed=config.seed)
        )
    lengths = {r.subject_id: len(r) for r in ordered}
    return EvaluationReport(config, specs, subject_ids, per_subject, pooled, significance, lengths)


def run_evaluation(config: EvalConfig) -> EvaluationReport:
    if config.input is None:
        raise ValueError("config.input is not set")
    records = load_dataset(Path(config.input), config.input_format, config.rate)
    return evaluate_records(records, config)
