"""Random and null reference predictors.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence``. Derived streams use ``spawn_key`` so that a subject's
stream depends only on the global seed and that subject's key.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

import numpy as np

from .metrics import ConfusionCounts, MetricResult, MetricSpec
from .series import ProbabilitySeries

RNG_ALGORITHM = "numpy-PCG64/SeedSequence-v1"


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for the substream ``key`` of ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(key))))


def subject_key(subject_id: str) -> int:
    """Stable 64-bit key derived from a subject id."""
    digest = hashlib.sha256(subject_id.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def random_baseline(length: int, rate: float = 1.0, seed: int = 0, *, key: Sequence[int] = ()) -> ProbabilitySeries:
    """I.i.d. uniform event probabilities; identical for identical ``(seed, key, length)``."""
    if length < 1:
        raise ValueError("length must be at least 1")
    rng = make_rng(seed, *key)
    return ProbabilitySeries(rng.random(length), rate=rate)


def subject_random_baseline(subject_id: str, length: int, rate: float, seed: int) -> ProbabilitySeries:
    return random_baseline(length, rate, seed, key=(subject_key(subject_id),))


def null_baseline_scores(specs: Sequence[MetricSpec]) -> list[MetricResult]:
    """Literal zero scores, one per spec.

    This is not the score of an all-zero prediction series; it is a
    reference that scores 0 on every metric by construction.
    """
    if not specs:
        raise ValueError("at least one metric spec is required")
    return [
        MetricResult(
            spec=spec,
            precision=0.0,
            recall=0.0,
            fdr=0.0,
            f_score=0.0,
            counts=ConfusionCounts(0, 0, 0, spec.family),
            precision_undefined=True,
            recall_undefined=True,
            degenerate_empty=True,
        )
        for spec in specs
    ]
