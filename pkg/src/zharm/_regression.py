"""Frozen regression constants from one-time fine-grid oracle runs.

The sup-over-t kernel decay constants come from the 64-points-per-decade
grid on [1e-6, 1e6] with t = 0 included; the weighted operator-norm
ratios from the seeded random-input protocol in ``verify``; the A_2
constant from the dyadic-window profile of the square-root power weight.
Verification recomputes these deterministically and asserts agreement
within a +/-5 percent band.
"""

DECAY_CONSTANTS = {
    # kind: (E1 growth, E2 smoothness)
    "heat": (0.43817936778690786, 0.46023228800801724),
    "poisson": (0.2917565324238472, 0.2057217429429732),
    "conj_poisson": (0.4244131815783876, 0.31516033136374766),
}

WEIGHTED_RATIOS = {
    "maximal_heat": 1.0885685090869426,
    "maximal_poisson": 1.0505097675462969,
    "square_function": 0.5165297579796182,
    "riesz": 1.046954067067688,
    "maximal_conj": 1.0532196121490511,
}

AP_POWER_HALF = 1.3135524651859127
