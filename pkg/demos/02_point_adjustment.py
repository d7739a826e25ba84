"""
Point adjustment and the K threshold
====================================

One long true event hit by a single prediction. Classic point adjustment
(K = 0) credits the whole segment; raising K demands that a larger share
of the segment be predicted before crediting it, and K = 1 is plain F1.
"""

import numpy as np

from eventf1 import LabelSeries, MetricSpec, compute_metric, extract_segments

y = np.zeros(300, dtype=int)
y[100:180] = 1
yhat = np.zeros_like(y)
yhat[[120, 121, 150]] = 1

truth, pred = LabelSeries(y), LabelSeries(yhat)
print("segments:", [s.as_tuple() for s in extract_segments(truth)])

for k in (0, 0.01, 0.03, 0.04, 0.25, 1):
    res = compute_metric(truth, pred, MetricSpec.pa(k))
    print(f"K={k:<5} F1={res.f_score:.3f}  P={res.precision:.3f}  R={res.recall:.3f}")

###############################################################################
# The segment has 80 samples and 3 are hit: 3/80 = 0.0375, so the credit
# disappears between K = 0.03 and K = 0.04.
