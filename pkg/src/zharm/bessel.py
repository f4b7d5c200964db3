"""Scaled modified Bessel family e^{-2t} I_k(2t) and its test oracles.

The row G(k, t) = e^{-2t} I_k(2t), k in Z, is the transition kernel of
the continuous-time simple random walk on the integers; every other
kernel in the package reduces to evaluations of this family.

Evaluation strategy:

* backward (Miller) three-term recurrence on the scaled values,
  normalized through sum_k e^{-z} I_k(z) = 1, the start index doubled
  until the row is stable;
* truncated power series for very small arguments;
* the large-argument expansion of I_k once the argument dominates k^2
  (needed internally by subordination integrals, whose auxiliary time
  can be far larger than any user-facing t).

The independent oracles used in the tests (direct power series,
Schlafli's integral representation and its difference forms, and the
large-argument normalization check) live here as well.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_jacobi

from ._backend import miller_row
from .quadrature import ConvergenceError, QuadratureSpec

SMALL_Z = 1e-4        # below this the 3-term power series is exact to 1e-16
ASYM_MIN_Z = 120.0    # large-argument branch needs z >= max(this, 5 k^2)
ASYM_K2_FACTOR = 5.0
_ROW_RTOL = 1e-14


@dataclass(frozen=True)
class ScaledBesselRow:
    """One row of the scaled family: values[i] = G(i - radius, t)."""

    t: float
    radius: int
    values: np.ndarray

    def value(self, k):
        if abs(k) > self.radius:
            raise IndexError(f"order {k} outside radius {self.radius}")
        return self.values[k + self.radius]


@dataclass(frozen=True)
class SeriesBudget:
    """Truncation control for the direct power series."""

    max_terms: int = 400
    rel_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")


def _check_time(t):
    if not (isinstance(t, (int, float)) and math.isfinite(t)) or t < 0:
        raise ValueError(f"time must be finite and nonnegative, got {t!r}")


def _series_half_row(z, radius):
    # e^{-z} I_k(z) for z < SMALL_Z: three series terms suffice to 1e-16
    k = np.arange(radius + 1, dtype=np.float64)
    half = z / 2.0
    with np.errstate(divide="ignore"):
        lead = k * math.log(half) - gammaln(k + 1.0) - z if half > 0 else None
    bracket = 1.0 + half * half / (k + 1.0) * (1.0 + half * half / (2.0 * (k + 2.0)))
    return np.exp(lead) * bracket


def _asym_half_row(z, radius):
    # I_k(z) e^{-z} ~ (2 pi z)^{-1/2} sum_j (-1)^j a_j(k) / z^j
    k = np.arange(radius + 1, dtype=np.float64)
    mu = 4.0 * k * k
    term = np.ones(radius + 1)
    total = term.copy()
    for j in range(60):
        term = -term * (mu - (2 * j + 1) ** 2) / (8.0 * (j + 1) * z)
        total += term
        if np.max(np.abs(term)) <= 1e-17 * np.max(np.abs(total)):
            break
    else:  # pragma: no cover - unreachable under the branch threshold
        raise ConvergenceError("large-argument series did not settle")
    return total / math.sqrt(2.0 * math.pi * z)


def _mass_radius(z):
    # index range carrying all but ~1e-13 of the scaled row's unit mass
    return int(math.ceil(z + 40.0 * math.sqrt(0.5 * z + 1.0)))


def _miller_half_row(z, radius):
    t = z / 2.0
    start = radius + int(math.ceil(40.0 + 4.0 * math.sqrt(radius * max(t, 1.0))))
    # the normalizing sum must see the whole row mass, not just the window
    start = max(start, _mass_radius(z) + 20, radius + 8)
    row = miller_row(z, radius, start)
    for _ in range(7):
        start *= 2
        refined = miller_row(z, radius, start)
        if np.all(np.abs(refined - row) <= _ROW_RTOL * np.abs(refined) + 1e-305):
            return refined
        row = refined
    raise ConvergenceError("Miller recurrence start-index doubling did not settle")


@lru_cache(maxsize=4096)
def _half_row_cached(t, radius):
    z = 2.0 * t
    if t == 0.0:
        row = np.zeros(radius + 1)
        row[0] = 1.0
    elif z < SMALL_Z:
        row = _series_half_row(z, radius)
    elif z >= max(ASYM_MIN_Z, ASYM_K2_FACTOR * radius * radius):
        row = _asym_half_row(z, radius)
    else:
        row = _miller_half_row(z, radius)
    row.flags.writeable = False
    return row


def scaled_half_row(t, radius):
    """Read-only array of G(k, t) for k = 0..radius."""
    _check_time(t)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return _half_row_cached(float(t), int(radius))


def scaled_bessel(k, t):
    """G(k, t) = e^{-2t} I_k(2t); symmetric in k, nonnegative."""
    return float(scaled_half_row(t, abs(int(k)))[abs(int(k))])


def scaled_bessel_row(t, radius):
    """Whole symmetric row G(k, t), k = -radius..radius, in one pass."""
    half = scaled_half_row(t, radius)
    full = np.concatenate([half[:0:-1], half])
    full.flags.writeable = False
    return ScaledBesselRow(t=float(t), radius=int(radius), values=full)


def heat_time_derivative(k, t):
    """Exact d/dt of G(k, t): G(k+1, t) - 2 G(k, t) + G(k-1, t)."""
    half = scaled_half_row(t, abs(int(k)) + 1)
    g = lambda j: half[abs(j)]
    return float(g(k + 1) - 2.0 * g(k) + g(k - 1))


def one_minus_g0(t):
    """1 - G(0, t), stable for small t where the direct subtraction cancels."""
    _check_time(t)
    z = 2.0 * t
    if z >= 0.5:
        return 1.0 - scaled_bessel(0, t)
    x = 0.0
    term = 1.0
    q = z * z / 4.0
    for m in range(1, 12):
        term *= q / (m * m)
        x += term
        if term <= 1e-18 * (1.0 + x):
            break
    return -math.expm1(math.log1p(x) - z)


def bessel_series_oracle(k, t, budget=None):
    """I_k(t) by direct summation of the defining power series.

    Test oracle only.  For t > 50 the scaled value e^{-t} I_k(t) is
    returned instead so the summation cannot overflow.
    """
    if budget is None:
        budget = SeriesBudget()
    k = abs(int(k))
    if t == 0.0:
        return 1.0 if k == 0 else 0.0
    sign = -1.0 if (t < 0 and k % 2) else 1.0
    t = abs(t)
    scaled = t > 50.0
    half = t / 2.0
    log_first = k * math.log(half) - math.lgamma(k + 1.0) - (t if scaled else 0.0)
    term = math.exp(log_first)
    total = term
    q = half * half
    for m in range(1, budget.max_terms + 1):
        term *= q / (m * (m + k))
        total += term
        if term <= budget.rel_tol * total:
            return sign * total
    raise ConvergenceError("power series budget exhausted",
                           achieved=term / total, required=budget.rel_tol)


@lru_cache(maxsize=64)
def _jacobi_rule(n, a):
    return roots_jacobi(n, a, a)


def _schlafli_quadrature(nu, z, poly, quad):
    if nu <= -0.5:
        raise ValueError("Schlafli representation needs nu > -1/2")
    if z <= 0:
        raise ValueError("Schlafli oracle needs z > 0")
    if quad is None:
        quad = QuadratureSpec(family="torus", transform="none")
    log_pref = nu * math.log(z / 2.0) - 0.5 * math.log(math.pi) - gammaln(nu + 0.5)
    pref = math.exp(log_pref)
    n = 48
    prev = None
    while n <= max(quad.nodes, 96):
        s, w = _jacobi_rule(n, nu - 0.5)
        val = pref * float(np.sum(w * np.exp(-z * s) * poly(s)))
        if prev is not None and abs(val - prev) <= quad.rel_tol * max(abs(val), 1e-300):
            return val
        prev = val
        n *= 2
    raise ConvergenceError("Gauss-Jacobi refinement exhausted its node budget",
                           achieved=abs(val - prev) / max(abs(val), 1e-300),
                           required=quad.rel_tol)


def schlafli_oracle(nu, z, quad=None):
    """I_nu(z) through Schlafli's Poisson-type integral (test oracle)."""
    return _schlafli_quadrature(nu, z, lambda s: 1.0, quad)


def schlafli_difference_oracle(nu, z, order, quad=None):
    """Forward differences of nu -> I_nu(z) in their single-integral forms.

    order 1:  I_{nu+1} - I_nu
    order 2:  I_{nu+2} - 2 I_{nu+1} + I_nu
    order 3:  I_{nu+3} - 3 I_{nu+2} + 3 I_{nu+1} - I_nu
    """
    if order == 1:
        return -_schlafli_quadrature(nu, z, lambda s: 1.0 + s, quad)
    if order == 2:
        return _schlafli_quadrature(
            nu, z, lambda s: s / z + (1.0 + s) ** 2, quad)
    if order == 3:
        return -_schlafli_quadrature(
            nu, z,
            lambda s: 3.0 * s / (z * z) + 3.0 * s * (1.0 + s) / z + (1.0 + s) ** 3,
            quad)
    raise ValueError("difference order must be 1, 2 or 3")


def asymptotic_check(k, t):
    """Relative deviation |I_k(t) e^{-t} sqrt(2 pi t) - 1| at large argument.

    The leading constant of the large-argument law is fixed to
    (2 pi)^{-1/2}; the deviation decays like (4k^2 - 1) / (8t), so the
    classical 10/t envelope only makes sense for small orders.
    """
    k = abs(int(k))
    if t < 100.0 * max(1, k * k):
        raise ValueError("asymptotic check requires t >= 100 max(1, k^2)")
    scaled = scaled_half_row(t / 2.0, k)[k]  # e^{-t} I_k(t)
    return abs(scaled * math.sqrt(2.0 * math.pi * t) - 1.0)
