"""Subject-level significance testing against reference baselines.

Scores are rounded to two decimals before differencing, so that differences
such as 0.0001 can never be significant. The permutation test flips the sign
of each per-subject difference; with ``2**n <= cap`` all sign vectors are
enumerated and the exact proportion is reported, otherwise ``cap`` random
sign vectors are drawn and the add-one estimator ``(1 + count) / (1 + cap)``
is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping, Optional, Sequence, Union

import numpy as np

from .baselines import make_rng

Scores = Union[Sequence[float], np.ndarray, Mapping[str, float]]
Degeneracy = Literal["none", "all_zero", "all_one"]

DEFAULT_CAP = 10_000
_CHUNK = 1024


def round2(x) -> np.ndarray:
    return np.round(np.asarray(x, dtype=float), 2)


@dataclass(frozen=True)
class DifferenceVector:
    values: np.ndarray
    subject_ids: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("need at least one per-subject difference")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def mean(self) -> float:
        return float(self.values.mean())


@dataclass(frozen=True)
class PermutationResult:
    p_value: float
    b_used: int
    exhaustive: bool


@dataclass(frozen=True)
class BootstrapCI:
    lo: float
    hi: float
    b_used: int


@dataclass(frozen=True)
class SignificanceCell:
    """Outcome of testing a model against both baselines for one metric."""

    p_reported: float
    ci_vs_random: BootstrapCI
    stars: str
    fail_random: bool
    fail_null: bool
    degenerate: Degeneracy
    p_random: float = field(default=1.0)
    p_null: float = field(default=1.0)
    mean_diff_random: float = 0.0
    mean_diff_null: float = 0.0
    n_subjects: int = 0

    def to_dict(self) -> dict:
        return {
            "p_reported": self.p_reported,
            "p_random": self.p_random,
            "p_null": self.p_null,
            "ci_vs_random": [self.ci_vs_random.lo, self.ci_vs_random.hi],
            "ci_b_used": self.ci_vs_random.b_used,
            "stars": self.stars,
            "fail_random": self.fail_random,
            "fail_null": self.fail_null,
            "degenerate": self.degenerate,
            "mean_diff_random": self.mean_diff_random,
            "mean_diff_null": self.mean_diff_null,
            "n_subjects": self.n_subjects,
        }


def _aligned(model: Scores, baseline: Scores) -> tuple[np.ndarray, np.ndarray, Optional[tuple[str, ...]]]:
    if isinstance(model, Mapping) or isinstance(baseline, Mapping):
        if not (isinstance(model, Mapping) and isinstance(baseline, Mapping)):
            raise ValueError("both score sets must be keyed by subject id, or neither")
        if set(model) != set(baseline):
            missing = sorted(set(model) ^ set(baseline))
            raise ValueError(f"subject sets differ: {missing}")
        ids = tuple(sorted(model))
        return (np.array([model[i] for i in ids], dtype=float),
                np.array([baseline[i] for i in ids], dtype=float), ids)
    x = np.asarray(model, dtype=float)
    y = np.asarray(baseline, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"score vectors are misaligned: {x.shape} vs {y.shape}")
    return x, y, None


def paired_differences(model_scores: Scores, baseline_scores: Scores) -> DifferenceVector:
    """``round2(x_i) - round2(y_i)`` per subject."""
    x, y, ids = _aligned(model_scores, baseline_scores)
    # the difference of two 2-decimal numbers is itself a 2-decimal number
    return DifferenceVector(np.round(round2(x) - round2(y), 2), ids)


def _as_diff(d) -> DifferenceVector:
    return d if isinstance(d, DifferenceVector) else DifferenceVector(d)


def _all_sign_vectors(n: int) -> np.ndarray:
    codes = np.arange(2**n, dtype=np.int64)[:, None]
    bits = (codes >> np.arange(n, dtype=np.int64)) & 1
    return 1 - 2 * bits


def permutation_test(d, cap: int = DEFAULT_CAP, seed: int = 0, *, key: Sequence[int] = ()) -> PermutationResult:
    """Two-sided sign-flip permutation test on the mean difference."""
    d = _as_diff(d)
    values = d.values
    n = d.n
    if not np.any(values):
        exhaustive = n < 63 and 2**n <= cap
        return PermutationResult(1.0, 2**n if exhaustive else cap, exhaustive)

    observed = abs(values.sum())
    # same-n sums instead of means; tolerance absorbs float reassociation
    tol = 1e-9 * max(1.0, float(np.abs(values).sum()))

    if n < 63 and 2**n <= cap:
        sums = _all_sign_vectors(n) @ values
        count = int(np.count_nonzero(np.abs(sums) >= observed - tol))
        return PermutationResult(count / 2**n, 2**n, True)

    count = 0
    for chunk, start in enumerate(range(0, cap, _CHUNK)):
        size = min(_CHUNK, cap - start)
        rng = make_rng(seed, *key, chunk)
        signs = rng.integers(0, 2, size=(size, n), dtype=np.int8) * 2 - 1
        count += int(np.count_nonzero(np.abs(signs @ values) >= observed - tol))
    return PermutationResult((1 + count) / (1 + cap), cap, False)


def bootstrap_ci(d, cap: int = DEFAULT_CAP, seed: int = 0, *, key: Sequence[int] = (),
                 level: float = 0.95) -> BootstrapCI:
    """Percentile bootstrap interval for the mean difference.

    The number of resamples is ``min(cap, C(2n - 1, n))``, the number of
    distinct multisets of size n. Percentiles interpolate linearly between
    order statistics.
    """
    d = _as_diff(d)
    values = d.values
    n = d.n
    b = min(cap, math.comb(2 * n - 1, n))
    means = np.empty(b)
    for chunk, start in enumerate(range(0, b, _CHUNK)):
        size = min(_CHUNK, b - start)
        rng = make_rng(seed, *key, chunk)
        idx = rng.integers(0, n, size=(size, n))
        means[start:start + size] = values[idx].mean(axis=1)
    tail = (1 - level) / 2 * 100
    lo, hi = np.percentile(means, [tail, 100 - tail])
    # float summation can stray an ulp outside the data range
    lo, hi = np.clip([lo, hi], values.min(), values.max())
    return BootstrapCI(float(lo), float(hi), b)


def star_string(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def degeneracy(model_scores) -> Degeneracy:
    r = round2(list(model_scores.values()) if isinstance(model_scores, Mapping) else model_scores)
    if np.all(r == 0):
        return "all_zero"
    if np.all(r == 1):
        return "all_one"
    return "none"


def combined_significance(model: Scores, random_b: Scores, null_b: Optional[Scores] = None,
                          alpha: float = 0.05, cap: int = DEFAULT_CAP, seed: int = 0) -> SignificanceCell:
    """Test the model against the random and the null baseline.

    Significance is only claimed when the model beats both baselines: each
    test must reject at ``alpha`` with a positive mean difference. The
    reported p-value is the larger of the two. A model whose rounded scores
    are all zero short-circuits to p = 1 on both sides.
    """
    if null_b is None:
        null_b = {k: 0.0 for k in model} if isinstance(model, Mapping) else np.zeros(len(model))
    d_rand = paired_differences(model, random_b)
    d_null = paired_differences(model, null_b)
    degen = degeneracy(model)

    if degen == "all_zero":
        p_rand = p_null = 1.0
    else:
        p_rand = permutation_test(d_rand, cap, seed, key=(0,)).p_value
        p_null = permutation_test(d_null, cap, seed, key=(1,)).p_value
    ci = bootstrap_ci(d_rand, cap, seed, key=(2,))

    beats_random = p_rand < alpha and d_rand.mean > 0
    beats_null = p_null < alpha and d_null.mean > 0
    p_reported = max(p_rand, p_null)
    stars = star_string(p_reported) if beats_random and beats_null else ""
    return SignificanceCell(
        p_reported=p_reported,
        ci_vs_random=ci,
        stars=stars,
        fail_random=not beats_random,
        fail_null=not beats_null,
        degenerate=degen,
        p_random=p_rand,
        p_null=p_null,
        mean_diff_random=d_rand.mean,
        mean_diff_null=d_null.mean,
        n_subjects=d_rand.n,
    )
