"""Rendering of evaluation reports (JSON, markdown, flat CSV) and plot data."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Optional, Sequence, Union

from .evaluation import SOURCES, EvaluationReport
from .metrics import MetricResult
from .scenarios import SuiteReport
from .stats import SignificanceCell

NOT_RANDOM = "∼R"
NOT_NULL = "∼0"
ALL_ZERO = "†"
ALL_ONE = "‡"

PLOT_COLUMNS = ["dataset", "metric", "model", "value"]
FLAT_COLUMNS = ["metric", "param", "scope", "source", "quantity", "value"]


def format_p(p: float) -> str:
    return "<0.001" if p < 0.001 else f"{p:.3f}"


def format_p_cell(cell: SignificanceCell) -> str:
    """``0.008**``, ``<0.001***``, ``1.000^∼R,∼0`` and so on."""
    text = format_p(cell.p_reported)
    if cell.stars:
        return text + cell.stars
    markers = [m for m, failed in ((NOT_RANDOM, cell.fail_random), (NOT_NULL, cell.fail_null)) if failed]
    return text + ("^" + ",".join(markers) if markers else "")


def format_ci_cell(cell: SignificanceCell) -> str:
    ci = cell.ci_vs_random
    text = f"[{ci.lo:.3f}, {ci.hi:.3f}]"
    if cell.degenerate == "all_zero":
        text += ALL_ZERO
    elif cell.degenerate == "all_one":
        text += ALL_ONE
    return text


def _md_table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return lines


def significance_table(cells: Sequence[tuple[str, SignificanceCell]]) -> str:
    """Markdown grid of metric, p-value with markers, and CI with degeneracy markers."""
    rows = [[name, format_p_cell(c), format_ci_cell(c)] for name, c in cells]
    return "\n".join(_md_table(["Metric", "p-value", "95% CI"], rows)) + "\n"


def _significance_md(report: EvaluationReport) -> list[str]:
    return significance_table(list(zip((s.name for s in report.specs), report.significance))).splitlines()


def _score_rows(label: str, model: MetricResult, random: MetricResult, with_pr: bool) -> list[list[str]]:
    rows = [[label, f"{model.f_score:.4f}", f"{random.f_score:.4f}"]]
    if with_pr:
        suffix = label.split("_", 1)[1] if "_" in label else ""
        tag = f"_{suffix}" if suffix else ""
        rows.append([f"Prec{tag}", f"{model.precision:.4f}", f"{random.precision:.4f}"])
        rows.append([f"Rec{tag}", f"{model.recall:.4f}", f"{random.recall:.4f}"])
    return rows


def _scores_md(report: EvaluationReport) -> list[str]:
    model, random = report.pooled["model"], report.pooled["random"]
    groups = [
        ("Standard Metrics", lambda s: s.family == "pointwise" and s.beta == 1, True),
        ("F-beta Variants", lambda s: s.family == "pointwise" and s.beta != 1, False),
        ("Point-Adjusted Metrics", lambda s: s.family == "pa_k", True),
        ("Windowed Metrics", lambda s: s.family == "windowed", True),
    ]
    rows: list[list[str]] = []
    for title, pick, with_pr in groups:
        idx = [i for i, s in enumerate(report.specs) if pick(s)]
        if not idx:
            continue
        rows.append([f"**{title}**", "", ""])
        for i in idx:
            spec = report.specs[i]
            if spec.param:
                rows.append([f"*{spec.param}*", "", ""])
            rows += _score_rows(spec.name, model[i], random[i], with_pr)
    return _md_table(["Metric", "Model", "Random"], rows)


def _subjects_md(report: EvaluationReport) -> list[str]:
    header = ["Subject"] + [s.name for s in report.specs]
    rows = [
        [sid] + [f"{r.f_score:.2f}" for r in report.per_subject[sid]["model"]]
        for sid in report.subject_ids
    ]
    return _md_table(header, rows)


def render_markdown(report: EvaluationReport) -> str:
    name = report.config.dataset_name
    lines = [f"# Evaluation: {name}", ""]
    lines += [f"Subjects: {len(report.subject_ids)}; delta = {report.config.delta:g}; "
              f"alpha = {report.config.alpha:g}; seed = {report.config.seed}", ""]
    lines += ["## Combined significance (model vs random and null)", ""]
    lines += _significance_md(report)
    lines += ["", f"Stars: ***p<0.001, **p<0.01, *p<0.05, shown only when both tests are significant. "
              f"{NOT_RANDOM} not significantly better than random, {NOT_NULL} not significantly better than null. "
              f"{ALL_ZERO} all scores are 0, {ALL_ONE} all scores are 1. "
              "CI: 95% bootstrap interval of the mean difference to the random baseline.", ""]
    lines += ["## Pooled scores", ""]
    lines += _scores_md(report)
    lines += ["", "## Per-subject model scores", ""]
    lines += _subjects_md(report)
    return "\n".join(lines) + "\n"


def _flat_rows(report: EvaluationReport):
    quantities = ("f_score", "precision", "recall", "fdr")
    for i, spec in enumerate(report.specs):
        for sid in report.subject_ids:
            for src in ("model", "random"):
                r = report.per_subject[sid][src][i]
                for q in quantities:
                    yield [spec.name, spec.param, sid, src, q, repr(getattr(r, q))]
        for src in SOURCES:
            r = report.pooled[src][i]
            for q in quantities:
                yield [spec.name, spec.param, "pooled", src, q, repr(getattr(r, q))]


def render_csv(report: EvaluationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FLAT_COLUMNS)
    writer.writerows(_flat_rows(report))
    return buf.getvalue()


def render_report(report: EvaluationReport, output_format: str = "json") -> str:
    if output_format == "json":
        return report.to_json()
    if output_format == "markdown":
        return render_markdown(report)
    if output_format == "csv":
        return render_csv(report)
    raise ValueError(f"unknown output format {output_format!r}")


def plot_rows(report: EvaluationReport, dataset: Optional[str] = None) -> list[list[str]]:
    dataset = dataset or report.config.dataset_name
    rows = []
    for i, spec in enumerate(report.specs):
        for src in ("model", "random"):
            rows.append([dataset, spec.name, src, repr(report.pooled[src][i].f_score)])
    return rows


def emit_plot_data(report: EvaluationReport, path: Union[str, Path], dataset: Optional[str] = None) -> Path:
    """Write grouped-bar plot data: one row per (metric, model|random) with the pooled F-score."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PLOT_COLUMNS)
        writer.writerows(plot_rows(report, dataset))
    return path


def render_suite(suite: SuiteReport, output_format: str = "json") -> str:
    if output_format == "json":
        return json.dumps(suite.to_dict(), indent=2, ensure_ascii=False) + "\n"
    if output_format != "markdown":
        raise ValueError(f"unknown output format {output_format!r}")
    rows = [[sid] + [f"{v:.4f}" for v in suite.values(sid).values()] for sid in suite.results]
    lines = ["# Scenario suite", ""] + _md_table(["Scenario"] + suite.metrics, rows) + [""]
    lines += _md_table(
        ["Scenario", "Check", "Observed", "Result"],
        [[o.scenario, o.description, f"{o.observed:.4f}", "pass" if o.passed else "FAIL"] for o in suite.outcomes],
    )
    return "\n".join(lines) + "\n"
