"""Compiled fixed-step RK4 sweep for u'' = kappa(x) u."""

import numpy as np
from numba import njit

CLAMP = 1e120
_RENORM = 1e100


@njit(cache=True)
def rk4_sweep(k_start, k_mid, k_end, h, u0, v0, renormalize):
    """Integrate (u, u') across len(k_start) steps of size h (h may be negative).

    k_start/k_mid/k_end hold kappa = 2m(V - E)/hbar^2 at the start, middle and
    end of each step. With ``renormalize`` the whole partial solution is
    rescaled whenever it grows past 1e100 (shape-only sweeps); otherwise the
    sweep stops once |u| or |u'| exceeds the clamp threshold.

    Returns (u, v, n_valid, nodes): samples past n_valid are undefined and
    ``nodes`` counts sign changes of u (exact zeros skipped), tallied on the
    fly so renormalization underflow cannot hide any.
    """
    n = k_start.shape[0]
    u = np.empty(n + 1)
    v = np.empty(n + 1)
    u[0] = u0
    v[0] = v0
    half = 0.5 * h
    sixth = h / 6.0
    nodes = 0
    last_sign = 0.0
    if u0 != 0.0:
        last_sign = 1.0 if u0 > 0 else -1.0
    for i in range(n):
        y0 = u[i]
        y1 = v[i]
        a0 = y1
        b0 = k_start[i] * y0
        a1 = y1 + half * b0
        b1 = k_mid[i] * (y0 + half * a0)
        a2 = y1 + half * b1
        b2 = k_mid[i] * (y0 + half * a1)
        a3 = y1 + h * b2
        b3 = k_end[i] * (y0 + h * a2)
        un = y0 + sixth * (a0 + 2.0 * a1 + 2.0 * a2 + a3)
        vn = y1 + sixth * (b0 + 2.0 * b1 + 2.0 * b2 + b3)
        u[i + 1] = un
        v[i + 1] = vn
        big = max(abs(un), abs(vn))
        if renormalize:
            if big > _RENORM:
                for j in range(i + 2):
                    u[j] /= _RENORM
                    v[j] /= _RENORM
        elif big > CLAMP or not np.isfinite(big):
            return u, v, i + 1, nodes
        if un != 0.0:
            s = 1.0 if un > 0 else -1.0
            if last_sign != 0.0 and s != last_sign:
                nodes += 1
            last_sign = s
    return u, v, n + 1, nodes
