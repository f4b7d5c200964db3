"""Discrete harmonic analysis on the integer lattice.

Heat and Poisson semigroups of the discrete Laplacian, the fractional
Laplacian and fractional integral, the shifted-Hilbert Riesz transforms,
conjugate Poisson operators, the Littlewood-Paley square function,
maximal operators, and Muckenhoupt A_p weight diagnostics -- with every
operator computable by two independent routes (physical-space kernels
built on the scaled Bessel row, and torus Fourier multipliers) that are
validated against each other.
"""

from ._backend import BACKEND
from .bessel import (ScaledBesselRow, SeriesBudget, asymptotic_check,
                     bessel_series_oracle, heat_time_derivative, scaled_bessel,
                     scaled_bessel_row, schlafli_difference_oracle,
                     schlafli_oracle)
from .kernels import (KernelTable, conjugate_poisson_kernel,
                      fractional_integral_kernel, fractional_laplacian_kernel,
                      kernel_decay_constants, kernel_table, poisson_kernel,
                      riesz_kernel, riesz_tilde_kernel)
from .operators import (TimeGrid, backward_difference, cauchy_riemann_residual,
                        conjugate_poisson_apply, discrete_laplacian,
                        forward_difference, fractional_integral_apply,
                        fractional_laplacian_apply, heat_apply,
                        heat_equation_residual, maximal_apply,
                        maximum_principle_check, poisson_apply, riesz_apply,
                        square_function)
from .quadrature import ConvergenceError, QuadratureSpec
from .sequences import Sequence, read_sequence, write_sequence
from .spectral import (OperatorSpec, fourier_forward, multiplier_eval,
                       oracle_apply, riesz_coefficient_check)
from .weights import Weight, ap_constant, power_weight, weighted_norm

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ConvergenceError", "KernelTable", "OperatorSpec",
    "QuadratureSpec", "ScaledBesselRow", "Sequence", "SeriesBudget",
    "TimeGrid", "Weight", "ap_constant", "asymptotic_check",
    "backward_difference", "bessel_series_oracle", "cauchy_riemann_residual",
    "conjugate_poisson_apply", "conjugate_poisson_kernel",
    "discrete_laplacian", "forward_difference", "fourier_forward",
    "fractional_integral_apply", "fractional_integral_kernel",
    "fractional_laplacian_apply", "fractional_laplacian_kernel",
    "heat_apply", "heat_equation_residual", "heat_time_derivative",
    "kernel_decay_constants", "kernel_table", "maximal_apply",
    "maximum_principle_check", "multiplier_eval", "oracle_apply",
    "poisson_apply", "poisson_kernel", "power_weight", "read_sequence",
    "riesz_apply", "riesz_coefficient_check", "riesz_kernel",
    "riesz_tilde_kernel", "scaled_bessel", "scaled_bessel_row",
    "schlafli_difference_oracle", "schlafli_oracle", "square_function",
    "weighted_norm", "write_sequence",
]
