"""Discrete Muckenhoupt weights and weighted sequence norms.

The A_p constant of a weight over a family of integer intervals is the
quantitative input to the weighted boundedness statements checked
empirically by the verification suites: the package records finite-sample
operator-norm ratios on power weights and asserts them as regression
bounds, which is a diagnostic, not a proof.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Weight:
    """Positive weight on an integer window, with its Lebesgue exponent."""

    lo: int
    values: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("weight needs a nonempty window")
        if not np.all(vals > 0):
            raise ValueError("weight values must be positive")
        if self.p < 1:
            raise ValueError("exponent p must be >= 1")
        object.__setattr__(self, "values", vals)

    @property
    def hi(self):
        return self.lo + len(self.values) - 1

    def on(self, lo, hi):
        if lo < self.lo or hi > self.hi:
            raise ValueError("interval escapes the weight window")
        return self.values[lo - self.lo:hi - self.lo + 1]


def power_weight(a, window):
    """w(n) = (|n| + 1)^a, the standard A_p test family (shifted off zero)."""
    lo, hi = window
    n = np.arange(lo, hi + 1)
    return Weight(lo=lo, values=(np.abs(n) + 1.0) ** a)


def ap_constant(w, p, intervals):
    """Muckenhoupt A_p constant of ``w`` over the given [M, N] intervals.

    For p > 1 the interval functional is
        (sum w) (sum w^{-1/(p-1)})^{p-1} / (N - M + 1)^p,
    and for p = 1 it is (sum w) sup_k w(k)^{-1} / (N - M + 1); the
    constant returned is the max over the family.
    """
    intervals = list(intervals)
    if not intervals:
        raise ValueError("need at least one interval")
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    best = 0.0
    for lo, hi in intervals:
        if hi < lo:
            raise ValueError("empty interval")
        vals = w.on(lo, hi)
        length = hi - lo + 1
        if p == 1:
            cur = vals.sum() * np.max(1.0 / vals) / length
        else:
            dual = np.sum(vals ** (-1.0 / (p - 1.0)))
            cur = vals.sum() * dual ** (p - 1.0) / length ** p
        best = max(best, float(cur))
    return best


def weighted_norm(f, w, p=2.0):
    """(sum |f(n)|^p w(n))^{1/p}; the support must sit inside the weight."""
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    ft = f.trim()
    if np.any(ft.values != 0) and (ft.lo < w.lo or ft.hi > w.hi):
        raise ValueError("sequence support escapes the weight window")
    vals = ft.values
    wvals = w.on(ft.lo, ft.hi)
    return float(np.sum(np.abs(vals) ** p * wvals) ** (1.0 / p))


def dyadic_intervals(jmax):
    """Symmetric dyadic windows [-2^j, 2^j], j = 0..jmax."""
    return [(-(1 << j), 1 << j) for j in range(jmax + 1)]


def power_weight_ap_profile(a, p=2.0, jmax=12):
    """A_p functional of (|n|+1)^a on each dyadic window, smallest first."""
    window = (-(1 << jmax), 1 << jmax)
    w = power_weight(a, window)
    return [ap_constant(w, p, [iv]) for iv in dyadic_intervals(jmax)]
