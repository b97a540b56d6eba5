"""Real Lambert W on its two real branches.

``lambert_w0`` is the principal branch (w >= -1), ``lambert_wm1`` the lower
branch (w <= -1). Both solve w * exp(w) = x.

Near the branch point the equation is rewritten with w = -1 - v and
x = -exp(-1 - g) as

    v - log1p(v) = g,

which stays well conditioned as x -> -1/e; ``lambert_wm1_gap`` takes g
directly so callers that know it analytically lose no digits forming x.
Away from the branch point, Halley's method on w * exp(w) - x is used,
seeded by the log asymptotics. Any iteration that leaves its branch falls
back to bisection.
"""

from __future__ import annotations

import math

# 1/e split into a double and its rounding error, so x + 1/e is exact
# when x sits near the branch point.
_INV_E_HI = 0.36787944117144233
_INV_E_LO = -1.2428753672788363e-17
BRANCH_POINT = -_INV_E_HI

# Arguments this far below -1/e are treated as rounding noise.
_BRANCH_SNAP = 1e-15
_MAX_ITER = 60
_STEP_TOL = 1e-14
_NEAR_BRANCH = -0.25

# Puiseux coefficients of W about the branch point in p = +-sqrt(2(1 + e x)).
_SERIES = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0, 769.0 / 17280.0, -221.0 / 8505.0)


def _v_minus_log1p(v: float) -> float:
    if abs(v) < 0.1:
        # sum_{k>=2} (-1)^k v^k / k
        acc = 0.0
        power = v * v
        k = 2
        while True:
            term = power / k
            acc += term if k % 2 == 0 else -term
            if abs(term) <= 1e-18 * abs(acc):
                return acc
            power *= v
            k += 1
    return v - math.log1p(v)


def _offset_series(p: float) -> float:
    """-1 - W as a Puiseux series in p, without the constant term."""
    acc = 0.0
    for c in reversed(_SERIES[1:]):
        acc = acc * p + c
    return -acc * p


def _solve_gap(gap: float, lower: bool) -> float:
    """Solve v - log1p(v) = gap; v >= 0 on the lower branch, v in (-1, 0] otherwise."""
    if gap == 0.0:
        return 0.0
    q = math.sqrt(-2.0 * math.expm1(-gap)) if gap < 700.0 else math.sqrt(2.0)
    if lower:
        v = _offset_series(-q) if gap < 2.0 else gap + math.log1p(gap)
        lo, hi = 0.0, 2.0 * gap + 2.0
    else:
        v = max(_offset_series(q), -1.0 + 1e-16)
        lo, hi = -1.0, 0.0
    for _ in range(_MAX_ITER):
        step = (_v_minus_log1p(v) - gap) * (1.0 + v) / v
        v_new = v - step
        if not (v_new > 0.0 if lower else -1.0 < v_new < 0.0):
            break
        v = v_new
        if abs(step) <= _STEP_TOL * abs(v):
            return v
    # Bisection: v - log1p(v) is increasing on v > 0, decreasing on (-1, 0).
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        above = _v_minus_log1p(mid) > gap
        if above == lower:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _gap_from_x(x: float) -> float:
    """g with x = -exp(-1 - g), computed from the exact offset x + 1/e."""
    offset = (x + _INV_E_HI) + _INV_E_LO
    return -math.log1p(-math.e * offset)


def _halley(w: float, x: float, lower: bool) -> float | None:
    """Refine ``w``; return None if the iteration strays off the branch."""
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            return None
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0 or not math.isfinite(denom):
            return None
        step = f / denom
        w_new = w - step
        if not math.isfinite(w_new) or (w_new > -1.0 if lower else w_new < -1.0):
            return None
        w = w_new
        if abs(step) <= _STEP_TOL * (1.0 + abs(w)):
            return w
    return w


def _bisect(x: float, lo: float, hi: float, increasing: bool) -> float:
    # w*exp(w) is increasing on [-1, inf) and decreasing on (-inf, -1].
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        r = mid * math.exp(mid) - x
        if (r < 0.0) == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _at_branch_point(x: float) -> bool:
    """Validate the lower bound on ``x``; True when it snaps to -1/e."""
    if math.isnan(x):
        raise ValueError("lambert W argument is NaN")
    offset = (x + _INV_E_HI) + _INV_E_LO
    if offset < 0.0:
        if -offset <= _BRANCH_SNAP:
            return True
        raise ValueError(f"lambert W argument {x!r} is below -1/e")
    return offset == 0.0


def lambert_w0(x: float) -> float:
    """Principal branch W0(x) for x >= -1/e; returns w >= -1."""
    if _at_branch_point(x):
        return -1.0
    if math.isinf(x):
        return math.inf
    if x == 0.0:
        return 0.0
    if x < _NEAR_BRANCH:
        return -1.0 - _solve_gap(_gap_from_x(x), lower=False)
    if x <= math.e:
        w = math.log1p(x) if x > 0.0 else x * (1.0 - x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    refined = _halley(w, x, lower=False)
    if refined is None:
        hi = max(1.0, math.log(x) + 1.0) if x > 0.0 else 0.0
        return _bisect(x, -1.0, hi, increasing=True)
    return refined


def lambert_wm1(x: float) -> float:
    """Lower branch W_{-1}(x) for -1/e <= x < 0; returns w <= -1."""
    if not x < 0.0:
        raise ValueError(f"lower-branch lambert W needs -1/e <= x < 0, got {x!r}")
    if _at_branch_point(x):
        return -1.0
    if x < _NEAR_BRANCH:
        return -1.0 - _solve_gap(_gap_from_x(x), lower=True)
    l1 = math.log(-x)
    l2 = math.log(-l1)
    w = l1 - l2 + l2 / l1
    refined = _halley(w, x, lower=True)
    if refined is None:
        return _bisect(x, 2.0 * l1 - 2.0, -1.0, increasing=False)
    return refined


def lambert_wm1_gap(gap: float) -> float:
    """W_{-1}(-exp(-1 - gap)) for gap >= 0.

    Equivalent to ``lambert_wm1(-math.exp(-1 - gap))`` but exact for tiny
    gaps and free of underflow for huge ones.
    """
    return -1.0 - lambert_wm1_offset(gap)


def lambert_wm1_offset(gap: float) -> float:
    """-1 - W_{-1}(-exp(-1 - gap)), the lower branch's distance below -1."""
    if not gap >= 0.0 or math.isinf(gap):
        raise ValueError(f"gap must be finite and >= 0, got {gap!r}")
    return _solve_gap(gap, lower=True)
