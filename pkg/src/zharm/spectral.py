"""Torus-side oracle: multipliers and operator application by inversion.

Every convolution operator of the package has a Fourier multiplier on the
torus; applying the operator through the inversion integral

    (1/2pi) integral_0^2pi  m(theta) F f(theta) e^{-i n theta} dtheta

gives a route entirely independent of the physical-space kernels, which
is what the cross-route validation leans on.

All multipliers are evaluated on the fundamental domain [0, 2pi), where
sin(theta/2) >= 0; the half-angle factors of the Riesz family are not
2pi-periodic, so this choice is part of the operator definition.

Quadrature: smooth and jump-discontinuous multipliers go through an
equispaced rule (exact for trigonometric polynomials, alias-limited
otherwise) with the node count doubled until stable; the fractional
families have power singularities or low-order kinks at theta = 0 whose
aliases decay too slowly, so they are integrated by a tanh-sinh rule on
the half-domain with the reflected half folded in by conjugation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import ConvergenceError, tanh_sinh
from .sequences import Sequence

_KINDS = ("heat", "poisson", "forward_difference", "backward_difference",
          "laplacian", "riesz", "riesz_tilde", "frac_laplacian",
          "frac_integral", "conj_poisson", "conj_poisson_tilde")

_NEEDS_T = ("heat", "poisson", "conj_poisson", "conj_poisson_tilde")
_JUMP_KINDS = ("riesz", "riesz_tilde", "conj_poisson", "conj_poisson_tilde")
_SINGULAR_KINDS = ("frac_laplacian", "frac_integral")


@dataclass(frozen=True)
class OperatorSpec:
    """Tagged description of one operator, usable by both routes."""

    kind: str
    t: float | None = None
    sigma: float | None = None
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind in _NEEDS_T and (self.t is None or self.t < 0):
            raise ValueError(f"{self.kind} needs a time t >= 0")
        if self.kind == "frac_laplacian" and not (
                self.sigma is not None and 0.0 < self.sigma < 1.0):
            raise ValueError("frac_laplacian needs sigma in (0, 1)")
        if self.kind == "frac_integral" and not (
                self.alpha is not None and 0.0 < self.alpha < 0.5):
            raise ValueError("frac_integral needs alpha in (0, 1/2)")


def multiplier_eval(op, theta):
    """Multiplier of ``op`` at angles in [0, 2pi); vectorized, complex."""
    th = np.asarray(theta, dtype=np.float64)
    if np.any((th < 0) | (th >= 2.0 * math.pi)):
        raise ValueError("multipliers are defined on the fundamental domain [0, 2pi)")
    s = np.sin(th / 2.0)  # nonnegative on the fundamental domain
    kind = op.kind
    if kind == "heat":
        return np.exp(-4.0 * op.t * s * s) + 0j
    if kind == "poisson":
        return np.exp(-2.0 * op.t * s) + 0j
    if kind == "forward_difference":
        return np.exp(-1j * th) - 1.0
    if kind == "backward_difference":
        return 1.0 - np.exp(1j * th)
    if kind == "laplacian":
        return -4.0 * s * s + 0j
    if kind == "riesz":
        return 1j * np.exp(-0.5j * th)
    if kind == "riesz_tilde":
        return 1j * np.exp(0.5j * th)
    if kind == "conj_poisson":
        return 1j * np.exp(-0.5j * th) * np.exp(-2.0 * op.t * s)
    if kind == "conj_poisson_tilde":
        return 1j * np.exp(0.5j * th) * np.exp(-2.0 * op.t * s)
    if kind == "frac_laplacian":
        return (4.0 * s * s) ** op.sigma + 0j
    # frac_integral: evaluate in log space so tiny angles cannot underflow
    # through 4 sin^2 before the negative power is applied
    out = np.full(s.shape, np.inf)
    pos = s > 0
    out[pos] = np.exp(-2.0 * op.alpha * (math.log(2.0) + np.log(s[pos])))
    return out + 0j


def fourier_forward(f, theta):
    """F f(theta) = sum_n f(n) e^{i n theta}; exact finite sum."""
    th = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    n = np.arange(f.lo, f.hi + 1)
    out = np.exp(1j * np.outer(th, n)) @ f.values
    return out if np.ndim(theta) else complex(out[0])


def _jump_midpoint(op):
    # value the periodic Fourier series converges to at theta = 0
    lim_right = complex(multiplier_eval(op, 0.0))
    th = 2.0 * math.pi
    if op.kind == "riesz":
        lim_left = 1j * np.exp(-0.5j * th)
    elif op.kind == "riesz_tilde":
        lim_left = 1j * np.exp(0.5j * th)
    elif op.kind == "conj_poisson":
        lim_left = 1j * np.exp(-0.5j * th)
    else:
        lim_left = 1j * np.exp(0.5j * th)
    return 0.5 * (lim_right + complex(lim_left))


def _equispaced_coefficients(op, f, ns, nodes_start, stop_tol, node_budget):
    n_nodes = nodes_start
    prev = None
    while n_nodes <= node_budget:
        th = 2.0 * math.pi * np.arange(n_nodes) / n_nodes
        samples = multiplier_eval(op, th) * fourier_forward(f, th)
        if op.kind in _JUMP_KINDS:
            samples[0] = _jump_midpoint(op) * fourier_forward(f, 0.0)
        coeffs = np.fft.fft(samples) / n_nodes
        out = coeffs[np.asarray(ns) % n_nodes]
        if prev is not None:
            err = np.max(np.abs(out - prev))
            if err <= stop_tol:
                return out
        prev = out
        n_nodes *= 2
    raise ConvergenceError("torus quadrature exhausted its node budget",
                           achieved=err, required=stop_tol)


def _reflected_multiplier(op, u):
    # multiplier at 2pi - u, evaluated through u to dodge rounding at the
    # fundamental-domain edge; equals conj(multiplier(u)) for these kinds
    return np.conj(multiplier_eval(op, u))


def _singular_coefficients(op, f, ns, rel_tol):
    # split (0, 2pi) at pi and reflect the right half onto (0, pi); the
    # integrand's singularity then sits at the left endpoint only, where
    # tanh-sinh nodes are exact distances
    ns = np.asarray(ns)

    def run(fr):
        def integrand(u):
            ff = fourier_forward(fr, u)
            ff_ref = np.conj(ff)  # fr is real
            e = np.exp(-1j * np.outer(ns, u))
            half = multiplier_eval(op, u) * ff * e
            other = _reflected_multiplier(op, u) * ff_ref * np.conj(e)
            return half + other

        return tanh_sinh(integrand, 0.0, math.pi, rel_tol=rel_tol) / (2.0 * math.pi)

    if np.issubdtype(f.values.dtype, np.complexfloating):
        fre = Sequence(lo=f.lo, values=f.values.real)
        fim = Sequence(lo=f.lo, values=f.values.imag)
        return run(fre) + 1j * run(fim)
    return run(f)


def oracle_apply(op, f, window, nodes=1 << 21, rel_tol=1e-10):
    """Apply ``op`` to ``f`` through the torus inversion integral.

    ``nodes`` caps the equispaced node count; refinement doubles until
    successive answers differ by less than ``rel_tol`` (absolute, the
    coefficients being O(1)).  Fractional kinds use the tanh-sinh route,
    for which ``nodes`` is not meaningful.
    """
    lo, hi = window
    ns = np.arange(lo, hi + 1)
    if op.kind in _SINGULAR_KINDS:
        out = _singular_coefficients(op, f, ns, rel_tol)
    else:
        start = 1 << 12
        if op.kind in ("forward_difference", "backward_difference", "laplacian"):
            # trigonometric polynomial: one sufficiently fine grid is exact
            span = (hi - lo + 1) + (f.hi - f.lo + 2)
            start = max(256, 1 << int(math.ceil(math.log2(2 * span))))
        out = _equispaced_coefficients(op, f, ns, start, rel_tol, nodes)
    if not np.issubdtype(f.values.dtype, np.complexfloating):
        out = out.real
    return Sequence(lo=int(lo), values=out)


def riesz_fourier_coefficient(n, stop_tol=1e-11, node_budget=1 << 23):
    """(1/2pi) integral of the Riesz multiplier times e^{-in theta}; complex.

    The alias error decays like N^{-2}, so the final error is about a
    third of the last doubling difference.
    """
    op = OperatorSpec(kind="riesz")
    out = _equispaced_coefficients(op, Sequence.delta(0), [n], 1 << 14,
                                   stop_tol, node_budget)
    return complex(out[0])


def riesz_coefficient_check(n):
    """|quadrature Fourier coefficient - 1/(pi (n + 1/2))|."""
    return abs(riesz_fourier_coefficient(n) - 1.0 / (math.pi * (n + 0.5)))
