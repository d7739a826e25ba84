"""Per-subject input files.

CSV: header with ``subject_id,t,y`` plus ``p`` and/or ``yhat``. ``t`` is the
0-based sample index and must run 0, 1, 2, ... within each subject (subjects
may be interleaved). A row needs a probability or a hard prediction; when a
subject has ``yhat`` on every row those predictions are used as-is.

JSONL: one object per line,
``{"subject_id": "...", "y": [...], "p": [...], "yhat": [...], "rate": 4}``,
with ``p``/``yhat`` optional as above and ``rate`` overriding the default.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .series import LabelSeries, ProbabilitySeries, SubjectRecord


class DatasetError(ValueError):
    """Malformed input file."""


def _infer_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    raise DatasetError(f"cannot infer input format from {path.name!r}; pass format='csv' or 'jsonl'")


def load_dataset(path: Union[str, Path], format: Optional[str] = None, rate: float = 4.0) -> list[SubjectRecord]:
    path = Path(path)
    fmt = format or _infer_format(path)
    if not rate > 0:
        raise DatasetError(f"rate must be positive, got {rate}")
    if fmt == "csv":
        with open(path, newline="", encoding="utf-8") as fh:
            return _load_csv(fh, rate)
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as fh:
            return _load_jsonl(fh, rate)
    raise DatasetError(f"unknown input format {fmt!r}")


def _parse_binary(text: str, what: str, line: int) -> int:
    text = text.strip()
    if text in ("0", "1"):
        return int(text)
    try:
        value = float(text)
    except ValueError:
        raise DatasetError(f"{what} is not a number ({text!r}), line {line}") from None
    if value not in (0.0, 1.0):
        raise DatasetError(f"{what} must be 0 or 1, got {text!r}, line {line}")
    return int(value)


def _parse_prob(text: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DatasetError(f"probability is not a number ({text!r}), line {line}") from None
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise DatasetError(f"probability out of range, line {line}")
    return value


def _load_csv(fh, rate: float) -> list[SubjectRecord]:
    reader = csv.DictReader(fh)
    cols = set(reader.fieldnames or ())
    for required in ("subject_id", "t", "y"):
        if required not in cols:
            raise DatasetError(f"missing column {required!r}, line 1")
    if not cols & {"p", "yhat"}:
        raise DatasetError("need a 'p' or a 'yhat' column, line 1")

    data: dict[str, dict[str, list]] = {}
    for row in reader:
        line = reader.line_num
        sid = (row.get("subject_id") or "").strip()
        if not sid:
            raise DatasetError(f"empty subject_id, line {line}")
        entry = data.setdefault(sid, {"y": [], "p": [], "yhat": []})
        try:
            t = int((row.get("t") or "").strip())
        except ValueError:
            raise DatasetError(f"t is not an integer ({row.get('t')!r}), line {line}") from None
        if t != len(entry["y"]):
            raise DatasetError(
                f"non-contiguous t for subject {sid!r}: expected {len(entry['y'])}, got {t}, line {line}"
            )
        entry["y"].append(_parse_binary(row.get("y") or "", "label y", line))
        p_text = (row.get("p") or "").strip()
        h_text = (row.get("yhat") or "").strip()
        if not p_text and not h_text:
            raise DatasetError(f"row has neither p nor yhat, line {line}")
        entry["p"].append(_parse_prob(p_text, line) if p_text else None)
        entry["yhat"].append(_parse_binary(h_text, "prediction yhat", line) if h_text else None)

    if not data:
        raise DatasetError("no data rows")
    records = []
    for sid, entry in data.items():
        probs = None if None in entry["p"] else ProbabilitySeries(entry["p"], rate)
        preds = None if None in entry["yhat"] else LabelSeries(entry["yhat"], rate)
        if probs is None and preds is None:
            raise DatasetError(f"subject {sid!r} mixes rows with only p and rows with only yhat")
        records.append(SubjectRecord(sid, LabelSeries(entry["y"], rate), probs, preds))
    return records


def _load_jsonl(fh, rate: float) -> list[SubjectRecord]:
    records = []
    seen = set()
    for line_no, line in enumerate(fh, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"invalid JSON ({exc.msg}), line {line_no}") from None
        if not isinstance(obj, dict):
            raise DatasetError(f"expected a JSON object, line {line_no}")
        for key in ("subject_id", "y"):
            if key not in obj:
                raise DatasetError(f"missing field {key!r}, line {line_no}")
        sid = str(obj["subject_id"])
        if sid in seen:
            raise DatasetError(f"duplicate subject {sid!r}, line {line_no}")
        seen.add(sid)
        r = float(obj.get("rate", rate))
        y = obj["y"]
        if "p" not in obj and "yhat" not in obj:
            raise DatasetError(f"need 'p' or 'yhat', line {line_no}")
        for key in ("p", "yhat"):
            if key in obj and len(obj[key]) != len(y):
                raise DatasetError(f"{key!r} has length {len(obj[key])} but 'y' has {len(y)}, line {line_no}")
        try:
            truth = LabelSeries(np.asarray(y), r)
            probs = ProbabilitySeries(obj["p"], r) if "p" in obj else None
            preds = LabelSeries(np.asarray(obj["yhat"]), r) if "yhat" in obj else None
        except (ValueError, TypeError) as exc:
            if "within [0, 1]" in str(exc):
                raise DatasetError(f"probability out of range, line {line_no}") from None
            raise DatasetError(f"{exc}, line {line_no}") from None
        records.append(SubjectRecord(sid, truth, probs, preds))
    if not records:
        raise DatasetError("no subjects in file")
    return records


def write_csv(records: list[SubjectRecord], path: Union[str, Path]) -> None:
    """Inverse of the CSV loader (probabilities and/or predictions as present)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["subject_id", "t", "y", "p", "yhat"])
        for rec in records:
            p = rec.probabilities.values if rec.probabilities is not None else None
            h = rec.predictions.values if rec.predictions is not None else None
            for t, y in enumerate(rec.truth.values):
                writer.writerow([
                    rec.subject_id, t, int(y),
                    "" if p is None else repr(float(p[t])),
                    "" if h is None else int(h[t]),
                ])
