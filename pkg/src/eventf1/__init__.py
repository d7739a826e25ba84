"""Event-detection metrics for time series with temporal tolerance and baseline significance tests."""

__version__ = "0.1.0"
SCHEMA_VERSION = "1.0"

from .baselines import RNG_ALGORITHM, null_baseline_scores, random_baseline  # noqa: E402
from .dataset import DatasetError, load_dataset  # noqa: E402
from .evaluation import EvalConfig, EvaluationReport, evaluate_records, run_evaluation  # noqa: E402
from .metrics import (  # noqa: E402
    ConfusionCounts,
    MetricResult,
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
from .report import emit_plot_data, render_report  # noqa: E402
from .scenarios import generate_scenario, run_scenario_suite  # noqa: E402
from .series import (  # noqa: E402
    EventSegment,
    LabelSeries,
    ProbabilitySeries,
    SubjectRecord,
    WindowSpec,
    extract_segments,
    seconds_to_samples,
    threshold_predictions,
    window_indices,
)
from .stats import (  # noqa: E402
    bootstrap_ci,
    combined_significance,
    paired_differences,
    permutation_test,
)
