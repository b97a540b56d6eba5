"""Independent reference computations used only by the tests.

Nothing here imports the package's solvers: roots come from plain bisection,
CDFs of sums from numerical convolution.
"""

import math

import mpmath
from scipy import integrate

C = 299_792_458.0


def bisect(f, lo, hi, tol=1e-15, iters=400):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def lambert_bisect(x, lo, hi):
    """Root of w e^w = x on [lo, hi] in 50-digit arithmetic."""
    with mpmath.workdps(50):
        x = mpmath.mpf(x)
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        f_lo = lo * mpmath.e ** lo - x
        for _ in range(200):
            mid = (lo + hi) / 2
            fm = mid * mpmath.e ** mid - x
            if (fm < 0) == (f_lo < 0):
                lo, f_lo = mid, fm
            else:
                hi = mid
        return float((lo + hi) / 2)


def sum_exp_cdf_convolution(m1, m2, t):
    """P(S1 + S2 < t) by integrating the first density against the second CDF."""
    if t == 0:
        return 0.0

    def integrand(s):
        return math.exp(-s / m1) / m1 * -math.expm1(-(t - s) / m2)

    # breakpoints on the decay scales at both ends, or quad can miss a narrow peak
    scales = (1.0, 4.0, 16.0, 64.0)
    pts = sorted({k * m1 for k in scales if k * m1 < t} | {t - k * m2 for k in scales if k * m2 < t})
    val, _ = integrate.quad(integrand, 0.0, t, points=pts or None, epsabs=1e-15, epsrel=1e-13, limit=400)
    return val


def friis_mp(f, d, g_tx=1.0, g_rx=1.0):
    with mpmath.workdps(40):
        lam = mpmath.mpf(C) / mpmath.mpf(f)
        return float((lam / (4 * mpmath.pi * mpmath.mpf(d))) ** 2 * g_tx * g_rx)


def cooperative_outage(p1c, g1, p2c, g2, t, e12, e21):
    """Outage of U1 under the exchange-then-Alamouti protocol, by quadrature."""
    both = (1 - e12) * (1 - e21)
    joint = sum_exp_cdf_convolution(p1c * g1, p2c * g2, t)
    solo = -math.expm1(-t / (p1c * g1))
    return both * joint + (1 - both) * solo
