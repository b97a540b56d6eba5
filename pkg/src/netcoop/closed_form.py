"""Outage CDFs, minimum powers and bits-per-joule for the three schemes.

Every power solves "outage probability == target" exactly for the scheme's
outage expression:

* traditional: each user alone on the cellular band, exponential SNR.
* inter: short-range packet exchange, then Alamouti (summed SNR) if both
  exchanges decoded, otherwise separate cellular transmissions.
* intra: the inter protocol with the exchange moved onto the cellular band
  and the cellular phase run at twice the rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from netcoop.link_budget import Geometry, Link, RadioParams, mean_snr_per_watt
from netcoop.special import lambert_wm1_offset

Scheme = Literal["traditional", "inter", "intra"]
SCHEMES: tuple[Scheme, ...] = ("traditional", "intra", "inter")

# Relative mean difference below which two exponential means count as equal.
EQUAL_MEANS_RTOL = 1e-9


class InfeasibleError(ValueError):
    """The target outage cannot be met by the equal-SNR cooperative scheme."""

    def __init__(self, message: str, min_feasible_p_out: float | None = None):
        super().__init__(message)
        self.min_feasible_p_out = min_feasible_p_out


@dataclass(frozen=True)
class Targets:
    p_out: float = 1e-3
    rate: float = 5e6

    def __post_init__(self) -> None:
        if not 0.0 < self.p_out < 1.0:
            raise ValueError(f"p_out must lie in (0, 1), got {self.p_out!r}")
        if not (self.rate > 0.0 and math.isfinite(self.rate)):
            raise ValueError(f"rate must be finite and > 0, got {self.rate!r}")


@dataclass(frozen=True)
class DecodePrior:
    """Probabilities of the exchange outcome: both decoded, or fallback."""

    p_theta1: float
    p_theta2: float

    @classmethod
    def from_target(cls, p_out: float) -> DecodePrior:
        return cls((1.0 - p_out) ** 2, p_out * (2.0 - p_out))


@dataclass(frozen=True)
class PowerAllocation:
    """Per-user, per-phase transmit powers in watts.

    ``exchange_rate`` and ``cellular_rate`` are the per-user rates (bits/s)
    the powers were dimensioned for; the simulator needs them to set the
    decoding thresholds.
    """

    scheme: Scheme
    p1_exchange: float
    p2_exchange: float
    p1_cellular: float
    p2_cellular: float
    total: float
    p_out: float
    cellular_rate: float
    exchange_rate: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p1_exchange", "p2_exchange", "p1_cellular", "p2_cellular", "total"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")

    def scaled(self, **factors: float) -> PowerAllocation:
        """Copy with named powers multiplied by factors and the total recomputed."""
        values = {
            name: getattr(self, name) * factors.pop(name, 1.0)
            for name in ("p1_exchange", "p2_exchange", "p1_cellular", "p2_cellular")
        }
        if factors:
            raise TypeError(f"unknown power fields: {sorted(factors)}")
        return _allocation(self.scheme, p_out=self.p_out, cellular_rate=self.cellular_rate,
                           exchange_rate=self.exchange_rate, **values)


@dataclass(frozen=True)
class EfficiencyReport:
    scheme: Scheme
    allocation: PowerAllocation
    eta: float  # bits/J


def aggregate_power(scheme: Scheme, p1_exchange: float, p2_exchange: float,
                    p1_cellular: float, p2_cellular: float, p_out: float) -> float:
    """Total consumed power.

    Cooperative schemes charge the cellular pair twice when both exchanges
    decode (Alamouti over the whole slot) and once otherwise.
    """
    if scheme == "traditional":
        return p1_cellular + p2_cellular
    weight = 1.0 + DecodePrior.from_target(p_out).p_theta1
    return p1_exchange + p2_exchange + weight * (p1_cellular + p2_cellular)


def _allocation(scheme: Scheme, *, p_out: float, cellular_rate: float, exchange_rate: float,
                p1_exchange: float, p2_exchange: float, p1_cellular: float,
                p2_cellular: float) -> PowerAllocation:
    total = aggregate_power(scheme, p1_exchange, p2_exchange, p1_cellular, p2_cellular, p_out)
    return PowerAllocation(scheme, p1_exchange, p2_exchange, p1_cellular, p2_cellular,
                           total, p_out, cellular_rate, exchange_rate)


# ---------------------------------------------------------------------------
# Outage CDFs
# ---------------------------------------------------------------------------

def snr_threshold(rate: float, bandwidth: float) -> float:
    """Minimum SNR supporting ``rate`` over ``bandwidth``: 2**(R/B) - 1."""
    if rate < 0.0 or bandwidth <= 0.0:
        raise ValueError("rate must be >= 0 and bandwidth > 0")
    return math.expm1(rate / bandwidth * math.log(2.0))


def _check_cdf_args(mean_snr: float, threshold: float) -> None:
    if not mean_snr > 0.0:
        raise ValueError(f"mean SNR must be > 0, got {mean_snr!r}")
    if not threshold >= 0.0:
        raise ValueError(f"threshold must be >= 0, got {threshold!r}")


def exp_outage(mean_snr: float, threshold: float) -> float:
    """P(SNR < threshold) for an exponential SNR with the given mean."""
    _check_cdf_args(mean_snr, threshold)
    return -math.expm1(-threshold / mean_snr)


def _gamma2_cdf(x: float) -> float:
    """1 - (1 + x) e^{-x}, accurate for small x."""
    if x >= 1.0:
        return 1.0 - (1.0 + x) * math.exp(-x)
    term = x * x / 2.0
    acc = 0.0
    k = 2
    while term > 1e-18 * acc or acc == 0.0:
        acc += term
        k += 1
        term *= x / k
        if term == 0.0:
            break
    return acc * math.exp(-x)


def diversity_outage_equal_means(mean_snr: float, threshold: float) -> float:
    """P(S1 + S2 < threshold) for two i.i.d. exponential SNRs of mean ``mean_snr``."""
    _check_cdf_args(mean_snr, threshold)
    return _gamma2_cdf(threshold / mean_snr)


def _expm1_over_x_minus_one(u: float) -> float:
    """(e^u - 1)/u - 1, with its small-u limit."""
    if abs(u) < 0.5:
        term = u / 2.0
        acc = 0.0
        k = 2
        while abs(term) > 1e-18 * abs(acc) or acc == 0.0:
            acc += term
            k += 1
            term *= u / k
            if term == 0.0:
                break
        return acc
    return math.expm1(u) / u - 1.0


def sum_exp_cdf_general(m1: float, m2: float, t: float) -> float:
    """P(S1 + S2 < t) for independent exponential SNRs with means m1, m2.

    Uses 1 - e^{-y}(1 + y * expm1(u)/u) with y = t/m2 and
    u = t (m1 - m2)/(m1 m2), which is the textbook
    1 - (m1 e^{-t/m1} - m2 e^{-t/m2})/(m1 - m2) without the cancellation
    as m1 -> m2.
    """
    if not (m1 > 0.0 and m2 > 0.0):
        raise ValueError("means must be > 0")
    if not t >= 0.0:
        raise ValueError(f"threshold must be >= 0, got {t!r}")
    if math.isinf(t):
        return 1.0
    if abs(m1 - m2) <= EQUAL_MEANS_RTOL * max(m1, m2):
        return _gamma2_cdf(t / (0.5 * (m1 + m2)))
    if m1 > m2:  # symmetric; keep u <= 0 so e^u cannot overflow
        m1, m2 = m2, m1
    y = t / m2
    u = t * (m1 - m2) / (m1 * m2)
    value = _gamma2_cdf(y) - y * math.exp(-y) * _expm1_over_x_minus_one(u)
    return min(max(value, 0.0), 1.0)


# ---------------------------------------------------------------------------
# Traditional non-cooperation
# ---------------------------------------------------------------------------

def _neg_log_success(p_out: float) -> float:
    return -math.log1p(-p_out)


def traditional_powers(radio: RadioParams, geo: Geometry, tgt: Targets) -> PowerAllocation:
    t = snr_threshold(tgt.rate, radio.B_c)
    q = _neg_log_success(tgt.p_out)
    p1 = t / (mean_snr_per_watt(Link.U1_BS, radio, geo) * q)
    p2 = t / (mean_snr_per_watt(Link.U2_BS, radio, geo) * q)
    return _allocation("traditional", p_out=tgt.p_out, cellular_rate=tgt.rate, exchange_rate=0.0,
                       p1_exchange=0.0, p2_exchange=0.0, p1_cellular=p1, p2_cellular=p2)


def traditional_efficiency(radio: RadioParams, geo: Geometry, tgt: Targets) -> EfficiencyReport:
    alloc = traditional_powers(radio, geo, tgt)
    return EfficiencyReport("traditional", alloc, tgt.rate / alloc.total)


# ---------------------------------------------------------------------------
# Inter-network cooperation
# ---------------------------------------------------------------------------

def inter_exchange_powers(radio: RadioParams, geo: Geometry, tgt: Targets,
                          rate: float | None = None) -> tuple[float, float]:
    """Short-range powers giving exchange outage ``tgt.p_out`` in each direction."""
    rate = tgt.rate if rate is None else rate
    t = snr_threshold(rate, radio.B_s)
    q = _neg_log_success(tgt.p_out)
    p1 = t / (mean_snr_per_watt(Link.U1_U2, radio, geo) * q)
    p2 = t / (mean_snr_per_watt(Link.U2_U1, radio, geo) * q)
    return p1, p2


def _lambert_gap(p_out: float) -> float:
    """g with W argument e^{-1/a}/(p - 1) = -exp(-1 - g), a = (1 - p)^2."""
    s2_minus_1 = p_out * (2.0 - p_out) / (1.0 - p_out) ** 2
    return s2_minus_1 + math.log1p(-p_out)


def _bracket_or_none(p_out: float) -> float | None:
    gap = _lambert_gap(p_out)
    if not gap > 0.0 or math.isinf(gap):
        return None
    # -1/a - W = v - (s^2 - 1) with v = -1 - W; since v - log1p(v) = gap
    # this equals log1p(v) - log(s), which avoids cancellation as p -> 1.
    x = math.log1p(lambert_wm1_offset(gap)) + math.log1p(-p_out)
    return x if x > 0.0 else None


def min_feasible_p_out(p_hi: float = 0.5) -> float:
    """Smallest target outage for which the cooperative bracket is positive."""
    lo, hi = -300.0, math.log10(p_hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _bracket_or_none(10.0 ** mid) is None:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    return 10.0 ** hi


def diversity_bracket(p_out: float) -> float:
    """Normalized SNR threshold t/m solving the cooperative outage equation.

    With equalized mean SNR m at the BS and Pr(both decoded) = a = (1-p)^2,
    the outage is 1 - (1 + a t/m) e^{-t/m}. Setting it to p and solving
    gives t/m = -1/a - W(e^{-1/a} / (p - 1)). Since t/m > 0 needs
    W < -1/a <= -1, the lower branch W_{-1} is the only admissible one:
    the principal branch lies in (-1, 0) and would give a negative
    threshold, i.e. a negative power.
    """
    if not 0.0 < p_out < 1.0:
        raise ValueError(f"p_out must lie in (0, 1), got {p_out!r}")
    x = _bracket_or_none(p_out)
    if x is None:
        p_min = min_feasible_p_out()
        raise InfeasibleError(
            f"target outage {p_out:g} is below the smallest feasible value "
            f"{p_min:.3g} for cooperative transmission in double precision",
            min_feasible_p_out=p_min,
        )
    return x


def cellular_power_ratio(radio: RadioParams, geo: Geometry) -> float:
    """P_2c / P_1c that equalizes the two users' mean SNRs at the BS."""
    return (radio.sigma2_1b * radio.G_U1 * geo.d_2b ** 2) / (radio.sigma2_2b * radio.G_U2 * geo.d_1b ** 2)


def inter_cellular_powers(radio: RadioParams, geo: Geometry, tgt: Targets,
                          rate: float | None = None) -> tuple[float, float]:
    rate = tgt.rate if rate is None else rate
    t = snr_threshold(rate, radio.B_c)
    x = diversity_bracket(tgt.p_out)
    p1 = t / (mean_snr_per_watt(Link.U1_BS, radio, geo) * x)
    return p1, cellular_power_ratio(radio, geo) * p1


def inter_total_power(radio: RadioParams, geo: Geometry, tgt: Targets) -> PowerAllocation:
    p1s, p2s = inter_exchange_powers(radio, geo, tgt)
    p1c, p2c = inter_cellular_powers(radio, geo, tgt)
    return _allocation("inter", p_out=tgt.p_out, cellular_rate=tgt.rate, exchange_rate=tgt.rate,
                       p1_exchange=p1s, p2_exchange=p2s, p1_cellular=p1c, p2_cellular=p2c)


def inter_efficiency(radio: RadioParams, geo: Geometry, tgt: Targets) -> EfficiencyReport:
    alloc = inter_total_power(radio, geo, tgt)
    return EfficiencyReport("inter", alloc, tgt.rate / alloc.total)


# ---------------------------------------------------------------------------
# Intra-network cooperation
# ---------------------------------------------------------------------------

def intra_powers(radio: RadioParams, geo: Geometry, tgt: Targets,
                 exchange_double_rate: bool = False) -> PowerAllocation:
    cellular_rate = 2.0 * tgt.rate
    exchange_rate = cellular_rate if exchange_double_rate else tgt.rate
    p1s, p2s = inter_exchange_powers(radio.exchange_on_cellular(), geo, tgt, rate=exchange_rate)
    p1c, p2c = inter_cellular_powers(radio, geo, tgt, rate=cellular_rate)
    return _allocation("intra", p_out=tgt.p_out, cellular_rate=cellular_rate,
                       exchange_rate=exchange_rate, p1_exchange=p1s, p2_exchange=p2s,
                       p1_cellular=p1c, p2_cellular=p2c)


def intra_powers_and_efficiency(radio: RadioParams, geo: Geometry, tgt: Targets,
                                exchange_double_rate: bool = False) -> EfficiencyReport:
    alloc = intra_powers(radio, geo, tgt, exchange_double_rate)
    return EfficiencyReport("intra", alloc, tgt.rate / alloc.total)


# ---------------------------------------------------------------------------
# Analytic outage at arbitrary powers
# ---------------------------------------------------------------------------

def exchange_radio(radio: RadioParams, scheme: Scheme) -> RadioParams:
    """Radio parameters governing the exchange phase of ``scheme``."""
    return radio.exchange_on_cellular() if scheme == "intra" else radio


def exchange_outages(radio: RadioParams, geo: Geometry, alloc: PowerAllocation) -> tuple[float, float]:
    """Outage of the U1->U2 and U2->U1 exchanges at the allocated powers."""
    xr = exchange_radio(radio, alloc.scheme)
    t = snr_threshold(alloc.exchange_rate, xr.B_s)
    out = []
    for link, p in ((Link.U1_U2, alloc.p1_exchange), (Link.U2_U1, alloc.p2_exchange)):
        out.append(1.0 if p == 0.0 else exp_outage(p * mean_snr_per_watt(link, xr, geo), t))
    return out[0], out[1]


def analytic_outage(radio: RadioParams, geo: Geometry, alloc: PowerAllocation) -> tuple[float, float]:
    """Per-user outage probability of ``alloc`` under its scheme's protocol."""
    t = snr_threshold(alloc.cellular_rate, radio.B_c)
    m1 = alloc.p1_cellular * mean_snr_per_watt(Link.U1_BS, radio, geo)
    m2 = alloc.p2_cellular * mean_snr_per_watt(Link.U2_BS, radio, geo)
    solo1, solo2 = exp_outage(m1, t), exp_outage(m2, t)
    if alloc.scheme == "traditional":
        return solo1, solo2
    e12, e21 = exchange_outages(radio, geo, alloc)
    fallback = e12 + e21 - e12 * e21
    both = (1.0 - e12) * (1.0 - e21)
    joint = sum_exp_cdf_general(m1, m2, t)
    return both * joint + fallback * solo1, both * joint + fallback * solo2


def scheme_report(scheme: Scheme, radio: RadioParams, geo: Geometry, tgt: Targets,
                  exchange_double_rate: bool = False) -> EfficiencyReport:
    if scheme == "traditional":
        return traditional_efficiency(radio, geo, tgt)
    if scheme == "inter":
        return inter_efficiency(radio, geo, tgt)
    if scheme == "intra":
        return intra_powers_and_efficiency(radio, geo, tgt, exchange_double_rate)
    raise ValueError(f"unknown scheme {scheme!r}")
