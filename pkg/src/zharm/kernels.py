"""Convolution kernels of the lattice semigroup calculus.

Eight kernel families: heat (the scaled Bessel row itself), Poisson
(subordination of the heat row), conjugate Poisson in both parities,
the two shifted-Hilbert Riesz kernels, and the fractional Laplacian /
fractional integral time-integral kernels.

Numerical strategy for the semi-infinite integrals:

* subordination integrals are log-transformed; the transformed integrand
  decays exponentially on both ends, so a doubling trapezoid grid is
  spectrally accurate once the grid is wide enough (the auxiliary time
  reaches far beyond any user-facing t, which is why the Bessel row
  evaluator carries a large-argument branch);
* fractional time integrals have power behaviour at both ends that no
  floating-point grid can capture for exponents near the boundary of the
  parameter range, so [0, delta] is summed analytically from the small-t
  series of the heat row, [T, infinity) analytically from its
  large-argument expansion, and the trapezoid middle piece gets
  Euler-Maclaurin junction corrections computed from those same series.

Sign conventions follow the package-wide choice R = convolution with
1/(pi (n + 1/2)); see the README notes on conventions.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma as gamma_fn

from .bessel import one_minus_g0, scaled_half_row
from .quadrature import QuadratureSpec, log_trapezoid, tanh_sinh

KERNEL_KINDS = ("heat", "poisson", "conj_poisson", "conj_poisson_tilde",
                "riesz", "riesz_tilde", "frac_laplacian", "frac_integral")

_SQRT_PI = math.sqrt(math.pi)
_SERIES_DELTA = 0.25   # analytic small-time series used on [0, delta]
_JMAX = 40             # 1/v orders kept in the large-argument expansion
_WIDE = 1e18           # subordination grids extend this far past the scales


@dataclass(frozen=True)
class KernelTable:
    """Batch of kernel values on an integer window [lo, lo + len - 1]."""

    kind: str
    param: float | None
    lo: int
    values: np.ndarray

    @property
    def hi(self):
        return self.lo + len(self.values) - 1

    def value(self, m):
        if not self.lo <= m <= self.hi:
            raise IndexError(f"index {m} outside window [{self.lo}, {self.hi}]")
        return float(self.values[m - self.lo])


def riesz_kernel(m):
    """Exact Riesz kernel 1 / (pi (m + 1/2)) (shifted discrete Hilbert)."""
    return 1.0 / (math.pi * (m + 0.5))


def riesz_tilde_kernel(m):
    """Exact conjugate-parity Riesz kernel 1 / (pi (m - 1/2))."""
    return 1.0 / (math.pi * (m - 0.5))


# ---------------------------------------------------------------------------
# large-argument expansion helpers


def _eseries_coeffs(orders, jmax=_JMAX):
    """Coefficients c_j(k) with G(k, v) = (4 pi v)^{-1/2} sum_j c_j(k) v^{-j}."""
    k = np.asarray(orders, dtype=np.float64)
    mu = 4.0 * k * k
    c = np.zeros((jmax + 1,) + k.shape)
    c[0] = 1.0
    for j in range(jmax):
        c[j + 1] = -c[j] * (mu - (2 * j + 1) ** 2) / (16.0 * (j + 1))
    return c


def _eseries_tail_moment(cmat, big_t, s):
    """integral_T^inf G-row(t) t^{s-1} dt from the large-argument expansion."""
    jmax = cmat.shape[0] - 1
    j = np.arange(jmax + 1, dtype=np.float64)
    chat = cmat * np.power(big_t, -j)[:, None]
    return big_t ** (s - 0.5) / math.sqrt(4.0 * math.pi) * (
        (1.0 / (j + 0.5 - s)) @ chat)


def _eseries_log_derivs(cmat, big_t, s, order):
    """d^order/dx^order of g(x) = t^s * G-row(t), t = e^x, at t = big_t."""
    jmax = cmat.shape[0] - 1
    j = np.arange(jmax + 1, dtype=np.float64)
    beta = s - 0.5 - j
    chat = cmat * np.power(big_t, beta)[:, None]
    return (beta ** order) @ chat / math.sqrt(4.0 * math.pi)


# ---------------------------------------------------------------------------
# subordination integrals (Poisson and conjugate-Poisson families)


def _window_orders(lo, hi, variant):
    m = np.arange(lo, hi + 1)
    if variant in ("poisson", "dt_poisson"):
        pairs = (np.abs(m),)
    elif variant in ("conj_plus", "dt_conj_plus"):
        pairs = (np.abs(m), np.abs(m + 1))
    else:
        pairs = (np.abs(m - 1), np.abs(m))
    return m, pairs


@lru_cache(maxsize=2048)
def _subordinate_window_cached(t, lo, hi, variant, rel_tol, node_budget):
    out = _subordinate_window_compute(t, lo, hi, variant, rel_tol, node_budget)
    out.flags.writeable = False
    return out


def _subordinate_window(t, lo, hi, variant, rel_tol=1e-10, node_budget=1 << 16):
    """Weighted integrals of the heat row over the auxiliary time.

    variant: poisson / conj_plus / conj_tilde and their analytic
    t-derivatives dt_poisson / dt_conj_plus / dt_conj_tilde, all on the
    index window [lo, hi].  Results are cached (read-only arrays): maximal
    operators revisit the same kernel rows for every input sequence.
    """
    return _subordinate_window_cached(float(t), int(lo), int(hi), variant,
                                      float(rel_tol), int(node_budget))


def _subordinate_window_compute(t, lo, hi, variant, rel_tol, node_budget):
    if t < 0 or not math.isfinite(t):
        raise ValueError("subordination time must be finite and nonnegative")
    m, pairs = _window_orders(lo, hi, variant)
    radius = int(max(np.max(p) for p in pairs))
    big_v = max(t * t, (radius + 2.0) ** 2, 1.0) * _WIDE
    v_lo = max(t * t / 190.0, 1e-28)
    t2 = t * t

    def combo(rows):
        if len(pairs) == 1:
            return rows[pairs[0]]
        return rows[pairs[0]] - rows[pairs[1]]

    if variant == "poisson":
        pref = t / (2.0 * _SQRT_PI)
        weight = lambda v: np.exp(-t2 / (4.0 * v)) * v ** -1.5
    elif variant == "dt_poisson":
        pref = 1.0 / (2.0 * _SQRT_PI)
        weight = lambda v: np.exp(-t2 / (4.0 * v)) * (1.0 - t2 / (2.0 * v)) * v ** -1.5
    elif variant in ("conj_plus", "conj_tilde"):
        pref = 1.0 / _SQRT_PI
        weight = lambda v: np.exp(-t2 / (4.0 * v)) * v ** -0.5
    else:  # dt_conj_*
        pref = -t / (2.0 * _SQRT_PI)
        weight = lambda v: np.exp(-t2 / (4.0 * v)) * v ** -1.5

    def integrand(vs):
        rows = np.stack([scaled_half_row(v, radius) for v in vs], axis=-1)
        return combo(rows) * weight(vs)

    quad = log_trapezoid(integrand, v_lo, big_v, rel_tol=rel_tol,
                         node_budget=node_budget)
    return pref * quad


def poisson_kernel(m, t, quad=None):
    """Poisson kernel P(m, t) by subordination of the heat row."""
    spec = quad or QuadratureSpec()
    if t == 0:
        return 1.0 if m == 0 else 0.0
    m = abs(int(m))
    return float(_subordinate_window(t, m, m, "poisson", rel_tol=spec.rel_tol,
                                     node_budget=spec.nodes)[0])


def conjugate_poisson_kernel(m, t, parity="plus", quad=None):
    """Conjugate Poisson kernel Q(m, t); tends to the Riesz kernel as t -> 0."""
    spec = quad or QuadratureSpec()
    variant = {"plus": "conj_plus", "tilde": "conj_tilde"}[parity]
    m = int(m)
    return float(_subordinate_window(t, m, m, variant, rel_tol=spec.rel_tol,
                                     node_budget=spec.nodes)[0])


def poisson_half_row(t, radius, rel_tol=1e-10, node_budget=1 << 16):
    """P(m, t) for m = 0..radius (the row is symmetric in m)."""
    if t == 0:
        row = np.zeros(radius + 1)
        row[0] = 1.0
        return row
    return _subordinate_window(t, 0, radius, "poisson", rel_tol=rel_tol,
                               node_budget=node_budget)


def conj_poisson_window(t, lo, hi, parity="plus", rel_tol=1e-10,
                        node_budget=1 << 16):
    """Q(m, t) for m = lo..hi (not symmetric; Q(-1-m, t) = -Q(m, t))."""
    variant = {"plus": "conj_plus", "tilde": "conj_tilde"}[parity]
    if t == 0:
        kern = riesz_kernel if parity == "plus" else riesz_tilde_kernel
        return np.array([kern(m) for m in range(lo, hi + 1)])
    return _subordinate_window(t, lo, hi, variant, rel_tol=rel_tol,
                               node_budget=node_budget)


def poisson_dt_window(t, lo, hi, rel_tol=1e-10, node_budget=1 << 16):
    """Analytic d/dt of the Poisson kernel row on [lo, hi]."""
    return _subordinate_window(t, lo, hi, "dt_poisson", rel_tol=rel_tol,
                               node_budget=node_budget)


def conj_poisson_dt_window(t, lo, hi, parity="plus", rel_tol=1e-10,
                           node_budget=1 << 16):
    """Analytic d/dt of the conjugate Poisson kernel row on [lo, hi]."""
    variant = {"plus": "dt_conj_plus", "tilde": "dt_conj_tilde"}[parity]
    return _subordinate_window(t, lo, hi, variant, rel_tol=rel_tol,
                               node_budget=node_budget)


def poisson_mass_deficit(t, radius, rel_tol=1e-12):
    """1 - sum_{|m| <= radius} P(m, t), evaluated without cancellation.

    The Poisson row has polynomial tails, so a finite window misses
    O(t / radius) of the unit mass; this integrates the heat-row mass
    escape against the subordination weight instead of subtracting two
    nearly equal numbers.
    """
    if t == 0:
        return 0.0
    big_v = max(t * t, (radius + 2.0) ** 2, 1.0) * 1e32
    v_lo = max(t * t / 190.0, 1e-28)
    t2 = t * t

    def escape(vs):
        chi = np.empty_like(vs)
        for i, v in enumerate(vs):
            half = scaled_half_row(v, radius)
            chi[i] = 1.0 - (half[0] + 2.0 * half[1:].sum())
        return chi * np.exp(-t2 / (4.0 * vs)) * vs ** -1.5

    quad = log_trapezoid(escape, v_lo, big_v, rel_tol=rel_tol)
    return float(t / (2.0 * _SQRT_PI) * quad)


# ---------------------------------------------------------------------------
# fractional time integrals


@lru_cache(maxsize=32)
def _gamma_series_coeffs(radius, qmax=40):
    """gamma_q(m) with G(m, t) = sum_q gamma_q(m) t^{m+q} near t = 0."""
    fact = [math.factorial(i) for i in range(qmax + 1)]
    coef = np.zeros((qmax + 1, radius + 1))
    for m in range(min(radius, qmax) + 1):
        for q in range(qmax - m + 1):
            acc = 0.0
            for j in range(q // 2 + 1):
                acc += (-2.0) ** (q - 2 * j) / (
                    fact[q - 2 * j] * fact[j] * math.factorial(j + m))
            coef[q, m] = acc
    return coef


def _gamma_series_sums(radius, s, subtract_identity, order):
    """Sums of gamma_q(m) (m+q+s)^order delta^{m+q+s} over the small-t series.

    order = -1 gives the [0, delta] integral of G(m,t) t^{s-1}; order 1, 3
    give the log-variable derivatives of t^s G(m, t) at delta used for the
    Euler-Maclaurin junction corrections.
    """
    delta = _SERIES_DELTA
    coef = _gamma_series_coeffs(radius)
    qmax = coef.shape[0] - 1
    m = np.arange(radius + 1, dtype=np.float64)
    out = np.zeros(radius + 1)
    for q in range(qmax + 1):
        expo = m + q + s
        term = coef[q] * delta ** expo * expo ** order
        if subtract_identity and q == 0:
            term = term.copy()
            term[0] = 0.0
        out += term
    return out


def heat_time_transform_row(radius, s, subtract_identity, rel_tol=1e-11,
                            node_budget=1 << 16):
    """integral_0^inf (G(m, t) - [m = 0] 1_{subtract}) t^{s-1} dt, m = 0..radius.

    s = -sigma with the identity subtracted gives the fractional Laplacian
    kernel row up to the 1/Gamma(-sigma) factor; s = +alpha without
    subtraction gives the fractional integral row up to 1/Gamma(alpha).
    """
    if not -1.0 < s < 0.5:
        raise ValueError("exponent s must lie in (-1, 1/2)")
    delta = _SERIES_DELTA
    series = _gamma_series_sums(radius, s, subtract_identity, -1)

    def integrand(ts):
        rows = np.empty((radius + 1, len(ts)))
        for i, t in enumerate(ts):
            rows[:, i] = scaled_half_row(t, radius)
            if subtract_identity:
                rows[0, i] = -one_minus_g0(t)
        return rows * ts ** (s - 1.0)

    big_t = max(2.5 * (radius + 2.0) ** 2, 60.0)
    cmat = _eseries_coeffs(np.arange(radius + 1))
    d1a = _gamma_series_sums(radius, s, subtract_identity, 1)
    d3a = _gamma_series_sums(radius, s, subtract_identity, 3)
    d1b = _eseries_log_derivs(cmat, big_t, s, 1)
    d3b = _eseries_log_derivs(cmat, big_t, s, 3)
    if subtract_identity:
        # the small-t series already dropped the identity's constant term;
        # the large-argument expansion has not, so only the right junction
        # picks up the -t^s derivative of the subtracted identity
        d1b = d1b.copy()
        d3b = d3b.copy()
        d1b[0] -= s * big_t ** s
        d3b[0] -= s ** 3 * big_t ** s
    quad = log_trapezoid(integrand, delta, big_t, rel_tol=rel_tol,
                         node_budget=node_budget,
                         end_derivs=(d1a, d3a, d1b, d3b))

    tail = _eseries_tail_moment(cmat, big_t, s)
    if subtract_identity:
        tail = tail.copy()
        tail[0] += big_t ** s / s
    return series + quad + tail


def fractional_laplacian_kernel(m, sigma, quad=None):
    """Off-diagonal kernel of (-Laplacian)^sigma; negative, symmetric.

    The on-diagonal coefficient lives in the operator, not the kernel;
    see ``frac_laplacian_diagonal``.
    """
    if not 0.0 < sigma < 1.0:
        raise ValueError("sigma must lie in (0, 1)")
    m = int(m)
    if m == 0:
        raise ValueError("the fractional Laplacian kernel is defined for m != 0")
    spec = quad or QuadratureSpec(family="fractional_time")
    row = heat_time_transform_row(abs(m), -sigma, True, rel_tol=spec.rel_tol,
                                  node_budget=spec.nodes)
    return float(row[abs(m)] / gamma_fn(-sigma))


def frac_laplacian_diagonal(sigma, quad=None, route="torus"):
    """Diagonal coefficient of (-Laplacian)^sigma.

    route="torus" integrates the multiplier (4 sin^2(theta/2))^sigma over
    the torus; route="time" uses the defining time integral of G(0,t) - 1.
    """
    if not 0.0 < sigma < 1.0:
        raise ValueError("sigma must lie in (0, 1)")
    spec = quad or QuadratureSpec(family="torus")
    if route == "time":
        row = heat_time_transform_row(0, -sigma, True, rel_tol=spec.rel_tol,
                                      node_budget=spec.nodes)
        return float(row[0] / gamma_fn(-sigma))
    val = tanh_sinh(lambda th: (2.0 * np.sin(th / 2.0)) ** (2.0 * sigma),
                    0.0, math.pi, rel_tol=spec.rel_tol)
    return float(val / math.pi)


def fractional_integral_kernel(m, alpha, quad=None):
    """Kernel of the fractional integral (-Laplacian)^{-alpha}; positive."""
    if not 0.0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    spec = quad or QuadratureSpec(family="fractional_time")
    row = heat_time_transform_row(abs(int(m)), alpha, False, rel_tol=spec.rel_tol,
                                  node_budget=spec.nodes)
    return float(row[abs(int(m))] / gamma_fn(alpha))


def frac_laplacian_half_row(radius, sigma, rel_tol=1e-11, node_budget=1 << 16):
    """Row [time-route diagonal, K_sigma(1), ..., K_sigma(radius)]."""
    row = heat_time_transform_row(radius, -sigma, True, rel_tol=rel_tol,
                                  node_budget=node_budget)
    return row / gamma_fn(-sigma)


def frac_integral_half_row(radius, alpha, rel_tol=1e-11, node_budget=1 << 16):
    row = heat_time_transform_row(radius, alpha, False, rel_tol=rel_tol,
                                  node_budget=node_budget)
    return row / gamma_fn(alpha)


# ---------------------------------------------------------------------------
# batch evaluation


def kernel_table(kind, param, m_range, quad=None):
    """Evaluate one kernel family on an inclusive integer window."""
    lo, hi = m_range
    if hi < lo:
        raise ValueError("empty kernel window")
    spec = quad or QuadratureSpec()
    ms = np.arange(lo, hi + 1)
    radius = int(max(abs(lo), abs(hi)))
    if kind == "heat":
        if param < 0:
            raise ValueError("heat kernel needs t >= 0")
        half = scaled_half_row(param, radius)
        values = half[np.abs(ms)]
    elif kind == "poisson":
        if param < 0:
            raise ValueError("Poisson kernel needs t >= 0")
        half = poisson_half_row(param, radius, rel_tol=spec.rel_tol,
                                node_budget=spec.nodes)
        values = half[np.abs(ms)]
    elif kind in ("conj_poisson", "conj_poisson_tilde"):
        parity = "plus" if kind == "conj_poisson" else "tilde"
        values = conj_poisson_window(param, lo, hi, parity=parity,
                                     rel_tol=spec.rel_tol, node_budget=spec.nodes)
    elif kind == "riesz":
        values = np.array([riesz_kernel(m) for m in ms])
    elif kind == "riesz_tilde":
        values = np.array([riesz_tilde_kernel(m) for m in ms])
    elif kind == "frac_laplacian":
        if lo <= 0 <= hi:
            raise ValueError("fractional Laplacian kernel window excludes m = 0; "
                             "the diagonal lives in the operator")
        half = frac_laplacian_half_row(radius, param, rel_tol=spec.rel_tol,
                                       node_budget=spec.nodes)
        values = half[np.abs(ms)]
    elif kind == "frac_integral":
        half = frac_integral_half_row(radius, param, rel_tol=spec.rel_tol,
                                      node_budget=spec.nodes)
        values = half[np.abs(ms)]
    else:
        raise ValueError(f"unknown kernel kind {kind!r}")
    return KernelTable(kind=kind, param=param, lo=int(lo),
                       values=np.asarray(values, dtype=np.float64))


# ---------------------------------------------------------------------------
# sup-over-t decay diagnostics (growth/smoothness regression constants)


def default_sup_time_grid(per_decade=64):
    """t = 0 plus a log grid on [1e-6, 1e6]; a lower bound for sup_{t>=0}."""
    return np.concatenate([[0.0], np.logspace(-6.0, 6.0, 12 * per_decade + 1)])


def _subordination_sup_matrices(t_grid, radius, per_decade=16):
    """P(m, t) and Q(m, t) (plus parity), m = 0..radius, on a whole t-grid.

    Shares one log-v matrix of heat rows across every t in the grid.
    """
    ts = np.asarray(t_grid, dtype=np.float64)
    tmax = float(ts.max())
    big_v = max(tmax * tmax, (radius + 2.0) ** 2, 1.0) * _WIDE
    pos = ts > 0
    v_lo = max(float(ts[pos].min()) ** 2 / 190.0, 1e-28)
    n = int(math.ceil(math.log10(big_v / v_lo) * per_decade)) + 1
    x = np.linspace(math.log(v_lo), math.log(big_v), n)
    v = np.exp(x)
    h = x[1] - x[0]
    rows = np.stack([scaled_half_row(vi, radius + 1) for vi in v], axis=-1)
    w = np.full(n, h)
    w[0] *= 0.5
    w[-1] *= 0.5
    w *= v

    tp = ts[pos]
    expw = np.exp(-np.outer(tp * tp, 1.0 / (4.0 * v)))

    p_mat = np.zeros((len(ts), radius + 1))
    p_mat[pos] = ((expw * (w * v ** -1.5)) @ rows[:radius + 1].T) \
        * (tp[:, None] / (2.0 * _SQRT_PI))
    p_mat[~pos, 0] = 1.0

    dg = rows[:radius + 1] - rows[1:radius + 2]
    q_mat = np.zeros((len(ts), radius + 1))
    q_mat[pos] = ((expw * (w * v ** -0.5)) @ dg.T) / _SQRT_PI
    q_mat[~pos] = riesz_kernel(np.arange(radius + 1).astype(float))
    return p_mat, q_mat


def kernel_decay_constants(kind, m_max=200, t_grid=None, per_decade=16):
    """Growth and smoothness constants of sup_t |K(m, t)| over a fine grid.

    Returns (E1, E2) with
      E1 = max_{1 <= m <= m_max} (m + 1)   * sup_t |K(m, t)|
      E2 = max_{1 <= m <= m_max} (m^2 + 1) * sup_t |K(m+1, t) - K(m, t)|.
    """
    if t_grid is None:
        t_grid = default_sup_time_grid()
    radius = m_max + 1
    if kind == "heat":
        sup = np.zeros(radius + 1)
        sup_diff = np.zeros(radius)
        for t in t_grid:
            half = scaled_half_row(t, radius)
            np.maximum(sup, half, out=sup)
            np.maximum(sup_diff, np.abs(np.diff(half)), out=sup_diff)
    elif kind in ("poisson", "conj_poisson"):
        p_mat, q_mat = _subordination_sup_matrices(t_grid, radius,
                                                   per_decade=per_decade)
        mat = p_mat if kind == "poisson" else q_mat
        sup = np.abs(mat).max(axis=0)
        sup_diff = np.abs(np.diff(mat, axis=1)).max(axis=0)
    else:
        raise ValueError(f"decay constants are defined for heat/poisson/"
                         f"conj_poisson, not {kind!r}")
    m = np.arange(1, m_max + 1)
    e1 = float(np.max((m + 1.0) * sup[1:m_max + 1]))
    e2 = float(np.max((m * m + 1.0) * sup_diff[1:m_max + 1]))
    return e1, e2
