"""
Temporal tolerance with the windowed F1
=======================================

A single annotated event and a prediction a few seconds late. Pointwise
F1 sees a miss and a false alarm; the windowed F1 credits the prediction
once the window covers the offset.
"""

import numpy as np

from eventf1 import LabelSeries, MetricSpec, WindowSpec, compute_metric, window_counts

rate = 4.0  # Hz
y = np.zeros(4 * 60 * 10, dtype=int)  # ten minutes
y[1000] = 1
yhat = np.zeros_like(y)
yhat[1000 + 12] = 1  # 3 s late

truth = LabelSeries(y, rate)
pred = LabelSeries(yhat, rate)

print("pointwise F1:", compute_metric(truth, pred, MetricSpec.pointwise()).f_score)

###############################################################################
# Sweep the window. Below 3 s there is no credit; from 3 s on the
# detection is a hit. A zero-length window is exactly the pointwise metric.

for seconds in (0, 1, 2, 3, 10, 60):
    spec = MetricSpec.windowed(WindowSpec(seconds))
    res = compute_metric(truth, pred, spec)
    print(f"{spec.name:>10}: F1={res.f_score:.3f}  counts={res.counts.as_tuple()}")

###############################################################################
# ``span`` reads the duration as the full window width rather than the
# radius, so it needs twice the duration for the same tolerance.

print(window_counts(truth, pred, WindowSpec(3, "span")).as_tuple())
print(window_counts(truth, pred, WindowSpec(6, "span")).as_tuple())
