"""Pure-Python fallback for the scaled-Bessel backward recurrence.

Mirrors the contract of the compiled ``zharm._core`` extension; see
``zharm._backend`` for the import-time selection.
"""

import numpy as np

_BIG = 1e250
_INV_BIG = 1e-250


def miller_row(z, radius, start):
    """One backward (Miller) pass of the scaled row e^{-z} I_k(z), k = 0..radius.

    Same semantics as the compiled twin: downward three-term recurrence
    seeded at order ``start``, normalized by I_0 + 2 sum_{k>=1} I_k = e^z.
    """
    if z <= 0.0:
        raise ValueError("miller_row requires z > 0")
    if start <= radius + 1:
        raise ValueError("start must exceed radius + 1")
    row = [0.0] * (radius + 1)
    u_hi = 0.0
    u_mid = 1.0
    ssum = 2.0 * u_mid
    two_over_z = 2.0 / z
    for k in range(start, 0, -1):
        u_lo = u_hi + (two_over_z * k) * u_mid
        if k - 1 <= radius:
            row[k - 1] = u_lo
        ssum += 2.0 * u_lo if k >= 2 else u_lo
        u_hi = u_mid
        u_mid = u_lo
        if u_lo > _BIG:
            u_hi *= _INV_BIG
            u_mid *= _INV_BIG
            ssum *= _INV_BIG
            for j in range(max(k - 1, 0), radius + 1):
                row[j] *= _INV_BIG
    out = np.array(row, dtype=np.float64)
    out /= ssum
    return out
