"""Slow, literal reference implementations used only by the tests.

Every quantity is evaluated by looping over indices and checking the
quantifiers directly; nothing here is shared with the package code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def segments(y):
    out, start = [], None
    for t, v in enumerate(y):
        if v and start is None:
            start = t
        if not v and start is not None:
            out.append((start, t - 1))
            start = None
    if start is not None:
        out.append((start, len(y) - 1))
    return out


def pointwise(y, yhat):
    tp = sum(1 for a, b in zip(y, yhat) if a == 1 and b == 1)
    fp = sum(1 for a, b in zip(y, yhat) if a == 0 and b == 1)
    fn = sum(1 for a, b in zip(y, yhat) if a == 1 and b == 0)
    return tp, fp, fn


def point_adjusted(y, yhat, k):
    k = Fraction(k).limit_denominator(10**6)
    tp = fn = 0
    for s, e in segments(y):
        members = range(s, e + 1)
        frac = Fraction(sum(yhat[t] for t in members), len(members))
        credited = frac >= k and frac > 0
        for t in members:
            if yhat[t] == 1 or credited:
                tp += 1
            else:
                fn += 1
    fp = sum(1 for t in range(len(y)) if yhat[t] == 1 and y[t] == 0)
    return tp, fp, fn


def window(y, yhat, r):
    n = len(y)

    def w(t):
        return range(max(0, t - r), min(n - 1, t + r) + 1)

    tp = sum(1 for t in range(n) if yhat[t] == 1 and any(y[u] == 1 for u in w(t)))
    fp = sum(1 for t in range(n) if yhat[t] == 1 and all(y[u] == 0 for u in w(t)))
    fn = sum(1 for t in range(n) if y[t] == 1 and all(yhat[u] == 0 for u in w(t)))
    return tp, fp, fn


def sign_flip_p(d):
    """Exact two-sided sign-flip p-value on exact rationals."""
    d = [Fraction(x).limit_denominator(10**6) for x in d]
    obs = abs(sum(d))
    hits = total = 0
    for signs in itertools.product((1, -1), repeat=len(d)):
        total += 1
        if abs(sum(s * x for s, x in zip(signs, d))) >= obs:
            hits += 1
    return Fraction(hits, total)
