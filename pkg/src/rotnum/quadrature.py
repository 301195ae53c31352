"""Quadrature helpers for smooth periodic integrands."""

import math

import numpy as np


def periodic_integral(f, tol=1e-12, n0=64, n_cap=2**20):
    """Integrate a period-1 function over one period.

    Uses the uniform trapezoidal rule, which is spectrally accurate for
    smooth periodic integrands, doubling the sample count (and reusing
    previous samples) until two successive values agree to ``tol`` or the
    sample cap is reached.

    Returns ``(value, last_delta, n_samples)``.
    """
    n = int(n0)
    s = float(np.mean(f(np.arange(n) / n)))
    delta = math.inf
    while n < n_cap:
        mid = float(np.mean(f((np.arange(n) + 0.5) / n)))
        s_new = 0.5 * (s + mid)
        delta = abs(s_new - s)
        s = s_new
        n *= 2
        if delta <= tol:
            break
    return s, delta, n


def golden_minimize(f, lo, hi, xtol=1e-12):
    """Golden-section search for the minimum of a scalar function on [lo, hi].

    Returns ``(x_min, f_min)``. The bracket is assumed to contain a local
    minimum; ``xtol`` is the final bracket width.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = f(c)
    fd = f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    xm = 0.5 * (a + b)
    fm = f(xm)
    if fc < fm:
        xm, fm = c, fc
    if fd < fm:
        xm, fm = d, fd
    return xm, fm
