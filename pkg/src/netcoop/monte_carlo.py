"""Monte Carlo simulation of the three uplink protocols at SNR level.

Each trial consumes exactly one Philox4x64 block (four 64-bit words), keyed
by the seed and addressed by the trial index, so the fading of trial ``i``
does not depend on how trials are chunked or spread over threads. The four
words feed, in order, |h_12|^2, |h_21|^2, |h_1b|^2, |h_2b|^2; the
traditional scheme only reads the last two.

Aggregation keeps integer counts only (failures, decode outcomes), so the
result is bit-identical for any chunk size or worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from netcoop.closed_form import PowerAllocation, exchange_radio, snr_threshold
from netcoop.link_budget import Geometry, Link, RadioParams, mean_snr_per_watt

_WORDS_PER_TRIAL = 4
_TWO_POW_M53 = 2.0 ** -53
Z95 = 1.96


@dataclass(frozen=True)
class TrialPlan:
    n_trials: int
    seed: int = 0
    chunk_size: int = 1 << 20
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.chunk_size < 1 or self.workers < 1:
            raise ValueError("chunk_size and workers must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class OutageEstimate:
    """Empirical outage counts and power consumption of one protocol run.

    ``theta1`` counts trials in which both users decoded the exchange;
    ``power_low``/``power_high`` are the per-trial consumed power in the
    fallback and both-decoded cases, so the power statistics follow exactly
    from the counts.
    """

    trials: int
    failures_u1: int
    failures_u2: int
    theta1: int
    power_low: float
    power_high: float

    @property
    def p_hat_u1(self) -> float:
        return self.failures_u1 / self.trials

    @property
    def p_hat_u2(self) -> float:
        return self.failures_u2 / self.trials

    @staticmethod
    def _ci95(p: float, n: int) -> float:
        return Z95 * math.sqrt(p * (1.0 - p) / n)

    @property
    def ci95_u1(self) -> float:
        return self._ci95(self.p_hat_u1, self.trials)

    @property
    def ci95_u2(self) -> float:
        return self._ci95(self.p_hat_u2, self.trials)

    @property
    def ci95_halfwidth(self) -> float:
        return max(self.ci95_u1, self.ci95_u2)

    @property
    def theta1_rate(self) -> float:
        return self.theta1 / self.trials

    @property
    def mean_power(self) -> float:
        f = self.theta1_rate
        return self.power_low + f * (self.power_high - self.power_low)

    @property
    def power_std(self) -> float:
        """Per-trial standard deviation of the consumed power (two-point law)."""
        f = self.theta1_rate
        return abs(self.power_high - self.power_low) * math.sqrt(f * (1.0 - f))

    @property
    def power_std_err(self) -> float:
        return self.power_std / math.sqrt(self.trials)


def uniforms(seed: int, start: int, n: int) -> np.ndarray:
    """(n, 4) uniforms in (0, 1] for trials ``start .. start + n - 1``."""
    bitgen = np.random.Philox(key=seed, counter=start)
    raw = bitgen.random_raw(n * _WORDS_PER_TRIAL).reshape(n, _WORDS_PER_TRIAL)
    return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_POW_M53


def exponential_from_uniform(sigma2: float, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF exponential draw with mean ``sigma2``; ``u`` in (0, 1]."""
    return -sigma2 * np.log(u)


def sample_fading_power(sigma2: float, rng: np.random.Generator, size: int | tuple[int, ...] | None = None):
    """Rayleigh power gain |h|^2 ~ Exp(mean=sigma2)."""
    if not sigma2 > 0.0:
        raise ValueError("sigma2 must be > 0")
    u = 1.0 - rng.random(size)  # (0, 1]
    return exponential_from_uniform(sigma2, u)


def _chunks(plan: TrialPlan) -> list[tuple[int, int]]:
    return [(s, min(plan.chunk_size, plan.n_trials - s)) for s in range(0, plan.n_trials, plan.chunk_size)]


def _run(plan: TrialPlan, chunk_fn) -> tuple[int, int, int]:
    chunks = _chunks(plan)
    if plan.workers == 1 or len(chunks) == 1:
        parts = [chunk_fn(s, n) for s, n in chunks]
    else:
        with ThreadPoolExecutor(max_workers=plan.workers) as pool:
            parts = list(pool.map(lambda c: chunk_fn(*c), chunks))
    f1 = sum(p[0] for p in parts)
    f2 = sum(p[1] for p in parts)
    th = sum(p[2] for p in parts)
    return f1, f2, th


def _unit_gain(link: Link, radio: RadioParams, geo: Geometry, sigma2: float) -> float:
    """SNR per watt per unit fading power."""
    return mean_snr_per_watt(link, radio, geo) / sigma2


def simulate_traditional(radio: RadioParams, geo: Geometry, alloc: PowerAllocation,
                         plan: TrialPlan) -> OutageEstimate:
    if alloc.scheme != "traditional":
        raise ValueError(f"expected a traditional allocation, got {alloc.scheme!r}")
    t = snr_threshold(alloc.cellular_rate, radio.B_c)
    a1 = alloc.p1_cellular * _unit_gain(Link.U1_BS, radio, geo, radio.sigma2_1b)
    a2 = alloc.p2_cellular * _unit_gain(Link.U2_BS, radio, geo, radio.sigma2_2b)

    def chunk(start: int, n: int) -> tuple[int, int, int]:
        u = uniforms(plan.seed, start, n)
        s1 = a1 * exponential_from_uniform(radio.sigma2_1b, u[:, 2])
        s2 = a2 * exponential_from_uniform(radio.sigma2_2b, u[:, 3])
        return int(np.count_nonzero(s1 < t)), int(np.count_nonzero(s2 < t)), 0

    f1, f2, _ = _run(plan, chunk)
    power = alloc.p1_cellular + alloc.p2_cellular
    return OutageEstimate(plan.n_trials, f1, f2, 0, power, power)


def _simulate_cooperative(radio: RadioParams, geo: Geometry, alloc: PowerAllocation,
                          plan: TrialPlan) -> OutageEstimate:
    xr = exchange_radio(radio, alloc.scheme)
    t_x = snr_threshold(alloc.exchange_rate, xr.B_s)
    t_c = snr_threshold(alloc.cellular_rate, radio.B_c)
    a12 = alloc.p1_exchange * _unit_gain(Link.U1_U2, xr, geo, xr.sigma2_12)
    a21 = alloc.p2_exchange * _unit_gain(Link.U2_U1, xr, geo, xr.sigma2_21)
    a1 = alloc.p1_cellular * _unit_gain(Link.U1_BS, radio, geo, radio.sigma2_1b)
    a2 = alloc.p2_cellular * _unit_gain(Link.U2_BS, radio, geo, radio.sigma2_2b)

    def chunk(start: int, n: int) -> tuple[int, int, int]:
        u = uniforms(plan.seed, start, n)
        snr12 = a12 * exponential_from_uniform(xr.sigma2_12, u[:, 0])
        snr21 = a21 * exponential_from_uniform(xr.sigma2_21, u[:, 1])
        # both decoded iff each exchange capacity exceeds the rate
        both = (snr12 > t_x) & (snr21 > t_x)
        s1 = a1 * exponential_from_uniform(radio.sigma2_1b, u[:, 2])
        s2 = a2 * exponential_from_uniform(radio.sigma2_2b, u[:, 3])
        alamouti_fail = (s1 + s2) < t_c
        out1 = np.where(both, alamouti_fail, s1 < t_c)
        out2 = np.where(both, alamouti_fail, s2 < t_c)
        return int(np.count_nonzero(out1)), int(np.count_nonzero(out2)), int(np.count_nonzero(both))

    f1, f2, th = _run(plan, chunk)
    exchange = alloc.p1_exchange + alloc.p2_exchange
    cellular = alloc.p1_cellular + alloc.p2_cellular
    return OutageEstimate(plan.n_trials, f1, f2, th, exchange + cellular, exchange + 2.0 * cellular)


def simulate_inter(radio: RadioParams, geo: Geometry, alloc: PowerAllocation,
                   plan: TrialPlan) -> OutageEstimate:
    if alloc.scheme != "inter":
        raise ValueError(f"expected an inter allocation, got {alloc.scheme!r}")
    return _simulate_cooperative(radio, geo, alloc, plan)


def simulate_intra(radio: RadioParams, geo: Geometry, alloc: PowerAllocation,
                   plan: TrialPlan) -> OutageEstimate:
    """Same protocol as inter, with the exchange on the cellular band."""
    if alloc.scheme != "intra":
        raise ValueError(f"expected an intra allocation, got {alloc.scheme!r}")
    return _simulate_cooperative(radio, geo, alloc, plan)


def simulate(radio: RadioParams, geo: Geometry, alloc: PowerAllocation, plan: TrialPlan) -> OutageEstimate:
    fn = {"traditional": simulate_traditional, "inter": simulate_inter, "intra": simulate_intra}[alloc.scheme]
    return fn(radio, geo, alloc, plan)
