"""Application of the semigroup calculus to finitely supported sequences.

Differences and the Laplacian are exact finite sums.  The heat semigroup
convolves with the scaled Bessel row; the Poisson and conjugate Poisson
operators convolve with the subordination kernels; fractional powers run
either through the defining time integral (assembled from the semigroup
orbit of the input) or through kernel summation with the torus-derived
diagonal.  Output windows must be chosen by the caller for the operators
with infinite-support output; ``default_window`` provides the dilations
used by the command line.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn

from . import kernels
from .bessel import one_minus_g0, scaled_half_row
from .kernels import _SERIES_DELTA, _eseries_coeffs, _eseries_log_derivs
from .quadrature import QuadratureSpec, log_trapezoid
from .sequences import Sequence, convolve_kernel

_SQRT_4PI = math.sqrt(4.0 * math.pi)


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing nonnegative times discretizing sup_{t >= 0}."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 1 or len(pts) == 0:
            raise ValueError("time grid must be a nonempty 1-d array")
        if pts[0] < 0 or not np.all(np.diff(pts) > 0) or not np.all(np.isfinite(pts)):
            raise ValueError("time grid must be finite, nonnegative, increasing")
        object.__setattr__(self, "points", pts)


def default_time_grid(lo=1e-3, hi=1e2, per_decade=8, include_zero=True):
    pts = np.logspace(math.log10(lo), math.log10(hi),
                      int(round((math.log10(hi) - math.log10(lo)) * per_decade)) + 1)
    if include_zero:
        pts = np.concatenate([[0.0], pts])
    return TimeGrid(points=pts)


def heat_window_radius(t):
    """Window dilation outside which the heat row mass is below 1e-12."""
    return int(math.ceil(2.0 * t + 40.0 * math.sqrt(t + 1.0)))


def poisson_window_radius(t):
    """Command-line default dilation for the Poisson family."""
    return int(math.ceil(4.0 * max(t, 1.0) + 40.0))


def default_window(f, kind, param=0.0):
    f = f.trim()
    if kind == "heat":
        pad = heat_window_radius(param)
    elif kind in ("poisson", "conj_poisson", "conj_poisson_tilde"):
        pad = poisson_window_radius(param)
    else:
        pad = 40
    return (f.lo - pad, f.hi + pad)


# ---------------------------------------------------------------------------
# exact difference operators


def forward_difference(f):
    """D f(n) = f(n+1) - f(n); support grows one step to the left."""
    padded = np.concatenate([f.values, [0.0]])
    shifted = np.concatenate([[0.0], f.values])
    return Sequence(lo=f.lo - 1, values=padded - shifted)


def backward_difference(f):
    """D~ f(n) = f(n) - f(n-1); support grows one step to the right."""
    padded = np.concatenate([f.values, [0.0]])
    shifted = np.concatenate([[0.0], f.values])
    return Sequence(lo=f.lo, values=padded - shifted)


def discrete_laplacian(f):
    """f(n+1) - 2 f(n) + f(n-1), realized as the factorization D~ D."""
    return backward_difference(forward_difference(f))


# ---------------------------------------------------------------------------
# semigroups


def _crop(seq, window):
    if window is None:
        return seq
    lo, hi = window
    return Sequence(lo=int(lo), values=seq.window(lo, hi))


def heat_apply(f, t, window=None):
    """W_t f by exact finite convolution with the scaled Bessel row."""
    if window is None:
        window = default_window(f, "heat", t)
    lo, hi = window
    radius = max(abs(lo - f.hi), abs(hi - f.lo))
    half = scaled_half_row(t, radius)
    offsets = np.arange(-radius, radius + 1)
    out = convolve_kernel(f, half[np.abs(offsets)], -radius)
    return _crop(out, window)


def poisson_apply(f, t, window=None, quad=None):
    """P_t f by convolution with the subordinated Poisson kernel."""
    spec = quad or QuadratureSpec()
    if window is None:
        window = default_window(f, "poisson", t)
    lo, hi = window
    radius = max(abs(lo - f.hi), abs(hi - f.lo))
    half = kernels.poisson_half_row(t, radius, rel_tol=spec.rel_tol,
                                    node_budget=spec.nodes)
    offsets = np.arange(-radius, radius + 1)
    out = convolve_kernel(f, half[np.abs(offsets)], -radius)
    return _crop(out, window)


def poisson_time_derivative(f, t, window, quad=None):
    """Analytic d/dt of P_t f on the window (t > 0)."""
    spec = quad or QuadratureSpec()
    lo, hi = window
    klo, khi = lo - f.hi, hi - f.lo
    row = kernels.poisson_dt_window(t, klo, khi, rel_tol=spec.rel_tol,
                                    node_budget=spec.nodes)
    return _crop(convolve_kernel(f, row, klo), window)


def conjugate_poisson_apply(f, t, parity="plus", window=None, quad=None,
                            route="kernel"):
    """Q_t f = R P_t f, by its kernel or by integrating D P_s f over [0, t]."""
    spec = quad or QuadratureSpec()
    if window is None:
        window = default_window(f, "conj_poisson", t)
    lo, hi = window
    if route == "kernel":
        klo, khi = lo - f.hi, hi - f.lo
        row = kernels.conj_poisson_window(t, klo, khi, parity=parity,
                                          rel_tol=spec.rel_tol,
                                          node_budget=spec.nodes)
        return _crop(convolve_kernel(f, row, klo), window)
    if route != "integral_of_dp":
        raise ValueError(f"unknown conjugate-Poisson route {route!r}")
    # Q_t f = R f + integral_0^t D P_s f ds (tilde: R~ f + integral D~ P_s f)
    out = riesz_apply(f, parity=parity, window=window)
    if t == 0:
        return out
    xs, ws = np.polynomial.legendre.leggauss(32)
    ss = 0.5 * t * (xs + 1.0)
    acc = np.zeros(hi - lo + 1)
    for s, w in zip(ss, ws):
        ps = poisson_apply(f, s, window=(lo - 1, hi + 1), quad=spec)
        dps = forward_difference(ps) if parity == "plus" else backward_difference(ps)
        acc += w * dps.window(lo, hi)
    return Sequence(lo=lo, values=out.values + 0.5 * t * acc)


def conjugate_poisson_time_derivative(f, t, parity="plus", window=None,
                                      quad=None):
    """Analytic d/dt of Q_t f on the window (t > 0)."""
    spec = quad or QuadratureSpec()
    lo, hi = window
    klo, khi = lo - f.hi, hi - f.lo
    row = kernels.conj_poisson_dt_window(t, klo, khi, parity=parity,
                                         rel_tol=spec.rel_tol,
                                         node_budget=spec.nodes)
    return _crop(convolve_kernel(f, row, klo), window)


def riesz_apply(f, parity="plus", window=None):
    """Exact convolution with the Riesz kernel 1/(pi (n +- 1/2))."""
    if window is None:
        window = default_window(f, "riesz")
    lo, hi = window
    kern = kernels.riesz_kernel if parity == "plus" else kernels.riesz_tilde_kernel
    offsets = np.arange(lo - f.hi, hi - f.lo + 1, dtype=np.float64)
    row = kern(offsets)
    return _crop(convolve_kernel(f, row, lo - f.hi), window)


# ---------------------------------------------------------------------------
# fractional powers


def _laplacian_powers(fvals, pmax):
    """Stack of Delta^p applied to a dense value array, p = 0..pmax.

    Row p is Delta^p f on the original window dilated by pmax (so all
    rows share one indexing).
    """
    n = len(fvals)
    out = np.zeros((pmax + 1, n + 2 * pmax), dtype=fvals.dtype)
    out[0, pmax:pmax + n] = fvals
    for p in range(pmax):
        cur = out[p]
        out[p + 1, 1:-1] = cur[2:] - 2.0 * cur[1:-1] + cur[:-2]
    return out


def fractional_laplacian_apply(f, sigma, window=None, quad=None,
                               route="time_integral"):
    """(-Laplacian)^sigma f, 0 < sigma < 1, by either route.

    time_integral assembles the defining integral of W_t f - f (series in
    powers of the Laplacian near t = 0, quadrature on the middle range,
    large-time expansion beyond); kernel_sum convolves with the kernel and
    adds the multiplier-derived diagonal.  The diagonal of time_integral
    never goes through kernel summation.
    """
    if not 0.0 < sigma < 1.0:
        raise ValueError("sigma must lie in (0, 1)")
    spec = quad or QuadratureSpec(family="fractional_time")
    if window is None:
        window = default_window(f, "frac_laplacian")
    lo, hi = window
    f = f.trim()

    if route == "kernel_sum":
        radius = max(abs(lo - f.hi), abs(hi - f.lo), 1)
        half = kernels.frac_laplacian_half_row(radius, sigma,
                                               rel_tol=spec.rel_tol,
                                               node_budget=spec.nodes)
        offsets = np.arange(-radius, radius + 1)
        row = half[np.abs(offsets)].copy()
        row[offsets == 0] = kernels.frac_laplacian_diagonal(sigma, quad=spec)
        return _crop(convolve_kernel(f, row, -radius), window)
    if route != "time_integral":
        raise ValueError(f"unknown fractional-Laplacian route {route!r}")

    s = -sigma
    delta = _SERIES_DELTA
    nwin = hi - lo + 1
    fwin = f.window(lo, hi)  # f on the output window

    # [0, delta]: W_t f - f = sum_{p>=1} t^p Delta^p f / p!
    pmax = 22
    powers = _laplacian_powers(f.values, pmax)

    def power_window(p):
        seq = Sequence(lo=f.lo - pmax, values=powers[p])
        return seq.window(lo, hi)

    series = np.zeros(nwin)
    d1a = np.zeros(nwin)
    d3a = np.zeros(nwin)
    fact = 1.0
    for p in range(1, pmax + 1):
        fact *= p
        wp = power_window(p) / fact
        expo = p + s
        series += wp * delta ** expo / expo
        d1a += wp * expo * delta ** expo
        d3a += wp * expo ** 3 * delta ** expo

    # [delta, T]: quadrature on the assembled orbit
    radius = max(abs(lo - f.hi), abs(hi - f.lo), 1)
    big_t = max(2.5 * (radius + 2.0) ** 2, 60.0)

    def integrand(ts):
        out = np.empty((nwin, len(ts)))
        for i, t in enumerate(ts):
            half = scaled_half_row(t, radius)
            offsets = np.arange(-radius, radius + 1)
            conv = np.convolve(half[np.abs(offsets)], f.values)
            full = Sequence(lo=f.lo - radius, values=conv).window(lo, hi)
            out[:, i] = full - fwin
        return out * ts ** (s - 1.0)

    # right-junction derivatives and the tail from the large-time expansion
    offsets = np.arange(-radius, radius + 1)
    cmat = _eseries_coeffs(np.abs(offsets))

    def conv_window(row):
        conv = np.convolve(row, f.values)
        return Sequence(lo=f.lo - radius, values=conv).window(lo, hi)

    j = np.arange(cmat.shape[0], dtype=np.float64)
    beta = s - 0.5 - j
    conv_c = np.stack([conv_window(cmat[jj]) for jj in range(cmat.shape[0])])
    d1b = (beta ** 1 * big_t ** beta) @ conv_c / _SQRT_4PI - s * big_t ** s * fwin
    d3b = (beta ** 3 * big_t ** beta) @ conv_c / _SQRT_4PI - s ** 3 * big_t ** s * fwin
    quad_part = log_trapezoid(integrand, delta, big_t, rel_tol=spec.rel_tol,
                              node_budget=spec.nodes,
                              end_derivs=(d1a, d3a, d1b, d3b))
    tail = (big_t ** beta / (j + 0.5 - s)) @ conv_c / _SQRT_4PI
    tail += fwin * big_t ** s / s

    vals = (series + quad_part + tail) / gamma_fn(-sigma)
    return Sequence(lo=lo, values=vals)


def fractional_integral_apply(f, alpha, window=None, quad=None):
    """(-Laplacian)^{-alpha} f, 0 < alpha < 1/2, by kernel convolution."""
    if not 0.0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    spec = quad or QuadratureSpec(family="fractional_time")
    if window is None:
        window = default_window(f, "frac_integral")
    lo, hi = window
    f = f.trim()
    radius = max(abs(lo - f.hi), abs(hi - f.lo), 1)
    half = kernels.frac_integral_half_row(radius, alpha, rel_tol=spec.rel_tol,
                                          node_budget=spec.nodes)
    offsets = np.arange(-radius, radius + 1)
    return _crop(convolve_kernel(f, half[np.abs(offsets)], -radius), window)


def maximum_principle_check(f, sigma, n0, quad=None):
    """(-Laplacian)^sigma f at a zero of a nonnegative sequence; always <= 0."""
    f = f.trim()
    if np.any(f.values < 0):
        raise ValueError("maximum principle check needs f >= 0")
    if f(n0) != 0:
        raise ValueError("maximum principle check needs f(n0) = 0")
    out = fractional_laplacian_apply(f, sigma, window=(n0, n0), quad=quad)
    return float(out.values[0])


def comparison_principle_pair(f, g, sigma, n0, quad=None):
    """((-Lap)^sigma f(n0), (-Lap)^sigma g(n0)) for f >= g touching at n0."""
    lo = min(f.lo, g.lo)
    hi = max(f.hi, g.hi)
    if np.any(f.window(lo, hi) < g.window(lo, hi)):
        raise ValueError("comparison principle needs f >= g")
    if f(n0) != g(n0):
        raise ValueError("comparison principle needs f(n0) = g(n0)")
    a = fractional_laplacian_apply(f, sigma, window=(n0, n0), quad=quad)
    b = fractional_laplacian_apply(g, sigma, window=(n0, n0), quad=quad)
    return float(a.values[0]), float(b.values[0])


# ---------------------------------------------------------------------------
# square function, maximal operators, equation residuals


def square_function(f, window=None, quad=None):
    """Littlewood-Paley g-function of the heat orbit.

    g(f)(n)^2 = integral_0^inf t |Delta W_t f(n)|^2 dt, with the exact
    time derivative Delta W_t = W_t Delta.
    """
    spec = quad or QuadratureSpec()
    if window is None:
        window = default_window(f, "heat", 1.0)
    lo, hi = window
    f = f.trim()
    radius = max(abs(lo - f.hi), abs(hi - f.lo)) + 1
    lap = discrete_laplacian(f)

    def integrand(ts):
        out = np.empty((hi - lo + 1, len(ts)))
        for i, t in enumerate(ts):
            half = scaled_half_row(t, radius)
            offsets = np.arange(-radius, radius + 1)
            conv = np.convolve(half[np.abs(offsets)], lap.values)
            vals = Sequence(lo=lap.lo - radius, values=conv).window(lo, hi)
            out[:, i] = vals * vals
        return out * ts

    norm1 = float(np.sum(np.abs(f.values)))
    t_hi = max(1.0, norm1) * 1e13
    gsq = log_trapezoid(integrand, 1e-8, t_hi, rel_tol=spec.rel_tol,
                        node_budget=max(spec.nodes, 1 << 17))
    return Sequence(lo=lo, values=np.sqrt(np.maximum(gsq, 0.0)))


def square_function_l2_tail(radius):
    """Approximate sum_{|n| > radius} g(delta_0)(n)^2.

    From the diffusive regime of the heat orbit, g(delta_0)(n)^2 is
    1/(8 pi n^2) to relative accuracy O(1/n^2); the exact lattice sum of
    1/n^2 is the trigamma function.
    """
    from scipy.special import polygamma

    return float(polygamma(1, radius + 1)) / (4.0 * math.pi)


def maximal_apply(f, kind, grid=None, window=None, quad=None):
    """Pointwise sup over the grid of |T_t f|, t = 0 included.

    At t = 0 the heat and Poisson families contribute |f| and the
    conjugate families |R f| (their t -> 0 limits).
    """
    if grid is None:
        grid = default_time_grid()
    spec = quad or QuadratureSpec()
    tmax = float(grid.points.max())
    if window is None:
        window = default_window(f, "heat" if kind == "heat" else "poisson", tmax)
    lo, hi = window
    if kind in ("conj_plus", "conj_tilde"):
        parity = "plus" if kind == "conj_plus" else "tilde"
        best = np.abs(riesz_apply(f, parity=parity, window=window).values)
    else:
        best = np.abs(f.window(lo, hi))
    for t in grid.points:
        if t == 0:
            continue
        if kind == "heat":
            cur = heat_apply(f, t, window=window)
        elif kind == "poisson":
            cur = poisson_apply(f, t, window=window, quad=spec)
        elif kind in ("conj_plus", "conj_tilde"):
            parity = "plus" if kind == "conj_plus" else "tilde"
            cur = conjugate_poisson_apply(f, t, parity=parity, window=window,
                                          quad=spec)
        else:
            raise ValueError(f"unknown maximal kind {kind!r}")
        np.maximum(best, np.abs(cur.values), out=best)
    return Sequence(lo=lo, values=best)


def heat_equation_residual(f, t, n):
    """|d/dt W_t f(n) - Laplacian W_t f(n)|, the exact-derivative identity."""
    if t <= 0:
        raise ValueError("heat equation residual needs t > 0")
    f = f.trim()
    radius = max(abs(n - f.hi), abs(n - f.lo)) + 1
    half = scaled_half_row(t, radius + 1)
    g = lambda j: half[abs(j)]
    dt = 0.0
    wlap = 0.0
    for m in range(f.lo, f.hi + 1):
        k = n - m
        dt += (g(k + 1) - 2.0 * g(k) + g(k - 1)) * f(m)
    w = lambda idx: sum(g(idx - m) * f(m) for m in range(f.lo, f.hi + 1))
    wlap = w(n + 1) - 2.0 * w(n) + w(n - 1)
    return abs(dt - wlap)


def cauchy_riemann_residual(f, t, window, quad=None):
    """Sup-norm residuals of the four conjugate-function equations.

    Under the package's sign convention (Riesz kernel 1/(pi (n+1/2)))
    the system reads
        d/dt Q_t f = D P_t f,        D~ Q_t f = -d/dt P_t f,
        d/dt Q~_t f = D~ P_t f,      D Q~_t f = -d/dt P_t f,
    and the returned values are the max deviations from each equation.
    """
    if t <= 0:
        raise ValueError("Cauchy-Riemann residuals need t > 0")
    spec = quad or QuadratureSpec()
    lo, hi = window
    wide = (lo - 1, hi + 1)
    p = poisson_apply(f, t, window=wide, quad=spec)
    dt_p = poisson_time_derivative(f, t, window=wide, quad=spec)
    q = conjugate_poisson_apply(f, t, parity="plus", window=wide, quad=spec)
    qt = conjugate_poisson_apply(f, t, parity="tilde", window=wide, quad=spec)
    dt_q = conjugate_poisson_time_derivative(f, t, parity="plus", window=wide,
                                             quad=spec)
    dt_qt = conjugate_poisson_time_derivative(f, t, parity="tilde", window=wide,
                                              quad=spec)

    def on_window(seq):
        return seq.window(lo, hi)

    r1 = np.max(np.abs(on_window(dt_q) - on_window(forward_difference(p))))
    r2 = np.max(np.abs(on_window(backward_difference(q)) + on_window(dt_p)))
    r3 = np.max(np.abs(on_window(dt_qt) - on_window(backward_difference(p))))
    r4 = np.max(np.abs(on_window(forward_difference(qt)) + on_window(dt_p)))
    return float(r1), float(r2), float(r3), float(r4)


def laplace_equation_residual(f, t, window, kind="poisson", h=1e-3, quad=None):
    """|d^2/dt^2 T_t f + Laplacian T_t f| by centered second differences."""
    if t <= h:
        raise ValueError("need t > h for the centered second difference")
    spec = quad or QuadratureSpec()
    lo, hi = window
    wide = (lo - 1, hi + 1)

    def apply_at(tt):
        if kind == "poisson":
            return poisson_apply(f, tt, window=wide, quad=spec)
        if kind in ("conj_poisson", "conj_poisson_tilde"):
            parity = "plus" if kind == "conj_poisson" else "tilde"
            return conjugate_poisson_apply(f, tt, parity=parity, window=wide,
                                           quad=spec)
        raise ValueError(f"no Laplace residual for kind {kind!r}")

    mid = apply_at(t)
    upper = apply_at(t + h)
    lower = apply_at(t - h)
    second = (upper.values - 2.0 * mid.values + lower.values) / (h * h)
    lap = discrete_laplacian(mid).window(lo, hi)
    second_win = Sequence(lo=wide[0], values=second).window(lo, hi)
    return float(np.max(np.abs(second_win + lap)))
