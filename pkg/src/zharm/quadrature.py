"""Quadrature engines shared by the kernel and operator integrals.

Three integral families appear throughout the package: subordination
integrals in the auxiliary time variable, fractional time integrals, and
inversion integrals over the torus.  They are all handled by two engines:
a trapezoid rule in log-time with node doubling (integrands here are
analytic in the log variable and decay exponentially on both ends) and a
tanh-sinh rule for finite intervals with an integrable endpoint
singularity.  Integrands are vector-valued: ``f(t)`` maps a node array of
shape ``(n,)`` to values of shape ``(..., n)``.
"""

import math
from dataclasses import dataclass

import numpy as np

_FAMILIES = ("subordination", "fractional_time", "torus")
_TRANSFORMS = ("log_map", "peak_split", "none")


class ConvergenceError(ArithmeticError):
    """A quadrature or series failed to reach the requested tolerance."""

    def __init__(self, message, achieved=None, required=None):
        if achieved is not None:
            message = f"{message} (achieved {achieved:.3e}, required {required:.3e})"
        super().__init__(message)
        self.achieved = achieved
        self.required = required


@dataclass(frozen=True)
class QuadratureSpec:
    """Contract for one integral family: transform, node budget, tolerance."""

    family: str = "subordination"
    transform: str = "log_map"
    nodes: int = 4096
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown quadrature family {self.family!r}")
        if self.transform not in _TRANSFORMS:
            raise ValueError(f"unknown quadrature transform {self.transform!r}")
        if self.nodes < 8:
            raise ValueError("node budget must be at least 8")
        if not 0.0 < self.rel_tol <= 1e-4:
            raise ValueError("rel_tol must lie in (0, 1e-4]")


def log_trapezoid(integrand, a, b, rel_tol=1e-11, node_budget=1 << 17,
                  per_decade=16, abs_floor=1e-300, end_derivs=None):
    """Integrate ``integrand`` over [a, b] by the trapezoid rule in log t.

    The grid is refined by doubling until the result (sup-norm over the
    vector components) is stable to ``rel_tol``.  Suitable for integrands
    analytic in log t; endpoints where the integrand has not decayed to
    nothing need ``end_derivs`` = (g'(xa), g'''(xa), g'(xb), g'''(xb)) with
    g(x) = t f(t), t = e^x — the Euler-Maclaurin boundary corrections that
    restore fast convergence when the integral continues analytically
    beyond the grid.
    """
    if not 0.0 < a < b:
        raise ValueError("log_trapezoid requires 0 < a < b")
    xa, xb = math.log(a), math.log(b)
    n = max(int(math.ceil((xb - xa) / math.log(10.0) * per_decade)), 16) + 1
    x = np.linspace(xa, xb, n)
    t = np.exp(x)
    vals = integrand(t) * t
    h = (xb - xa) / (n - 1)
    raw = h * (vals[..., 1:-1].sum(axis=-1) + 0.5 * (vals[..., 0] + vals[..., -1]))

    def corrected(raw_total, step):
        if end_derivs is None:
            return raw_total
        d1a, d3a, d1b, d3b = end_derivs
        return (raw_total - step ** 2 / 12.0 * (d1b - d1a)
                + step ** 4 / 720.0 * (d3b - d3a))

    total = corrected(raw, h)
    err = math.inf
    while 2 * (n - 1) + 1 <= node_budget:
        xm = (x[:-1] + x[1:]) / 2.0
        tm = np.exp(xm)
        mid = (integrand(tm) * tm).sum(axis=-1)
        raw = raw / 2.0 + (h / 2.0) * mid
        n = 2 * (n - 1) + 1
        x = np.linspace(xa, xb, n)
        h /= 2.0
        new_total = corrected(raw, h)
        scale = max(np.max(np.abs(new_total)), abs_floor)
        err = np.max(np.abs(new_total - total)) / scale
        total = new_total
        if err <= rel_tol:
            return total
    raise ConvergenceError("log-trapezoid refinement exhausted its node budget",
                           achieved=err, required=rel_tol)


def _phi(x):
    # tanh-sinh map (0,1), written in exp form so tiny values keep full precision
    e = math.pi * np.sinh(x)
    out = np.empty_like(e)
    neg = e < 0
    out[neg] = np.exp(e[neg]) / (1.0 + np.exp(e[neg]))
    out[~neg] = 1.0 / (1.0 + np.exp(-e[~neg]))
    return out


def _phi_weight(x):
    p = _phi(x)
    return math.pi * np.cosh(x) * p * (1.0 - p)


def tanh_sinh(integrand, a, b, rel_tol=1e-11, max_level=11, x_max=6.8,
              abs_floor=1e-300):
    """Double-exponential rule on (a, b); integrable singularity allowed at ``a``.

    Nodes near ``a`` are generated as exact distances from the endpoint, so
    integrands such as t^{-gamma}, gamma < 1, are evaluated without
    cancellation.  The level is raised (step halved) until stable.
    """
    if not b > a:
        raise ValueError("tanh_sinh requires b > a")
    width = b - a

    def sample(x):
        p = _phi(x)
        keep = p > 1e-306
        x = x[keep]
        p = p[keep]
        t = a + width * p
        w = width * _phi_weight(x)
        return (integrand(t) * w).sum(axis=-1)

    h = 0.5
    x0 = np.arange(-x_max, x_max + h / 2, h)
    total = h * sample(x0)
    err = math.inf
    for _ in range(max_level):
        xm = np.arange(-x_max + h / 2, x_max + h / 4, h)
        mid = sample(xm)
        new_total = (total + h * mid) / 2.0
        h /= 2.0
        scale = max(np.max(np.abs(new_total)), abs_floor)
        err = np.max(np.abs(new_total - total)) / scale
        total = new_total
        if err <= rel_tol:
            return total
    raise ConvergenceError("tanh-sinh refinement exhausted its level budget",
                           achieved=err, required=rel_tol)
