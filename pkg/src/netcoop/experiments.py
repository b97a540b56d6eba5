"""Single-point analysis, distance sweeps and closed-form vs Monte Carlo checks."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import ClassVar, Literal

import numpy as np

from netcoop.closed_form import (
    SCHEMES,
    EfficiencyReport,
    InfeasibleError,
    PowerAllocation,
    Scheme,
    scheme_report,
)
from netcoop.config import ScenarioConfig
from netcoop.monte_carlo import Z95, TrialPlan, simulate

SweepVariable = Literal["cell_distance", "inter_user_distance"]
SWEEP_VARIABLES: tuple[SweepVariable, ...] = ("cell_distance", "inter_user_distance")
DEFAULT_RANGES: dict[str, tuple[float, float]] = {
    "cell_distance": (200.0, 2000.0),
    "inter_user_distance": (1.0, 100.0),
}

# Outage rows with fewer expected failures than this cannot be judged.
MIN_EXPECTED_EVENTS = 10.0
N_SIGMA = 3.0
# Deterministic powers (traditional scheme) must agree to this relative error.
DETERMINISTIC_RTOL = 1e-12


@dataclass(frozen=True)
class SchemeResult:
    scheme: Scheme
    report: EfficiencyReport | None
    error: str | None = None

    @property
    def feasible(self) -> bool:
        return self.report is not None

    @property
    def eta(self) -> float | None:
        return None if self.report is None else self.report.eta

    columns: ClassVar[tuple[str, ...]] = (
        "scheme", "feasible", "p1_exchange_w", "p2_exchange_w", "p1_cellular_w",
        "p2_cellular_w", "total_w", "eta_bpj", "error",
    )

    def record(self) -> dict[str, object]:
        a = self.report.allocation if self.report else None
        return {
            "scheme": self.scheme,
            "feasible": self.feasible,
            "p1_exchange_w": a.p1_exchange if a else None,
            "p2_exchange_w": a.p2_exchange if a else None,
            "p1_cellular_w": a.p1_cellular if a else None,
            "p2_cellular_w": a.p2_cellular if a else None,
            "total_w": a.total if a else None,
            "eta_bpj": self.eta,
            "error": self.error,
        }


def run_analyze(cfg: ScenarioConfig) -> list[SchemeResult]:
    """Efficiency reports for every scheme; infeasible schemes carry the error text."""
    results = []
    for scheme in SCHEMES:
        try:
            rep = scheme_report(scheme, cfg.radio, cfg.geo, cfg.tgt, cfg.intra_exchange_double_rate)
        except InfeasibleError as exc:
            results.append(SchemeResult(scheme, None, str(exc)))
        else:
            results.append(SchemeResult(scheme, rep))
    return results


@dataclass(frozen=True)
class SweepSpec:
    variable: SweepVariable
    start: float
    stop: float
    points: int
    scale: Literal["linear", "log"] = "linear"

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if not 0.0 < self.start < self.stop:
            raise ValueError("sweep needs 0 < start < stop")
        if self.points < 2:
            raise ValueError("sweep needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown scale {self.scale!r}")

    def grid(self) -> list[float]:
        fn = np.geomspace if self.scale == "log" else np.linspace
        return [float(v) for v in fn(self.start, self.stop, self.points)]


@dataclass(frozen=True)
class SweepRow:
    swept_m: float
    eta_traditional_bpj: float | None
    eta_intra_bpj: float | None
    eta_inter_bpj: float | None
    feasible_traditional: bool
    feasible_intra: bool
    feasible_inter: bool

    columns: ClassVar[tuple[str, ...]] = (
        "swept_m", "eta_traditional_bpj", "eta_intra_bpj", "eta_inter_bpj",
        "feasible_traditional", "feasible_intra", "feasible_inter",
    )

    def record(self) -> dict[str, object]:
        return dataclasses.asdict(self)

    @classmethod
    def from_record(cls, rec: dict[str, str]) -> SweepRow:
        def num(key: str) -> float | None:
            return float(rec[key]) if rec[key] != "" else None

        def flag(key: str) -> bool:
            return rec[key] == "true"

        return cls(float(rec["swept_m"]), num("eta_traditional_bpj"), num("eta_intra_bpj"),
                   num("eta_inter_bpj"), flag("feasible_traditional"), flag("feasible_intra"),
                   flag("feasible_inter"))


def sweep_point(cfg: ScenarioConfig, variable: SweepVariable, value: float) -> SweepRow:
    if variable == "cell_distance":
        point = cfg.with_geometry(d_1b=value, d_2b=value)
    else:
        point = cfg.with_geometry(d_12=value, d_21=value)
    etas = {r.scheme: r.eta for r in run_analyze(point)}
    return SweepRow(value, etas["traditional"], etas["intra"], etas["inter"],
                    etas["traditional"] is not None, etas["intra"] is not None,
                    etas["inter"] is not None)


def run_sweep(cfg: ScenarioConfig, sweep: SweepSpec) -> list[SweepRow]:
    return [sweep_point(cfg, sweep.variable, v) for v in sweep.grid()]


@dataclass(frozen=True)
class VerifyRow:
    """One line of the verification table.

    ``user`` is ``u1``/``u2`` for outage checks and ``total`` for the mean
    consumed power check. ``status`` is one of pass, fail, inconclusive,
    skipped.
    """

    scheme: Scheme
    user: str
    p_target: float | None
    p_mc: float | None
    ci95: float | None
    power_analytic_w: float | None
    power_mc_w: float | None
    status: str

    columns: ClassVar[tuple[str, ...]] = (
        "scheme", "user", "p_target", "p_mc", "ci95", "power_analytic_w", "power_mc_w", "pass",
    )

    def record(self) -> dict[str, object]:
        rec = dataclasses.asdict(self)
        rec["pass"] = rec.pop("status")
        return rec


def _outage_status(p_target: float, p_mc: float, ci95: float, n: int) -> str:
    if n * p_target < MIN_EXPECTED_EVENTS:
        return "inconclusive"
    return "pass" if abs(p_mc - p_target) <= N_SIGMA * ci95 else "fail"


def _power_row(scheme: Scheme, alloc: PowerAllocation, est, n: int) -> VerifyRow:
    analytic = alloc.total
    mc = est.mean_power
    if scheme == "traditional":
        ok = abs(mc - analytic) <= DETERMINISTIC_RTOL * analytic
        return VerifyRow(scheme, "total", None, None, 0.0, analytic, mc, "pass" if ok else "fail")
    # sigma from the model's two-point law: low power w.p. p(2-p), high otherwise
    fallback = alloc.p_out * (2.0 - alloc.p_out)
    sigma = abs(est.power_high - est.power_low) * math.sqrt(fallback * (1.0 - fallback) / n)
    if n * fallback < MIN_EXPECTED_EVENTS:
        status = "inconclusive"
    else:
        status = "pass" if abs(mc - analytic) <= N_SIGMA * sigma else "fail"
    return VerifyRow(scheme, "total", None, None, Z95 * sigma, analytic, mc, status)


def run_verify(cfg: ScenarioConfig, plan: TrialPlan,
               allocations: dict[str, PowerAllocation] | None = None) -> list[VerifyRow]:
    """Simulate every scheme at its closed-form powers and compare.

    ``allocations`` overrides the closed-form powers per scheme, e.g. to
    check that a perturbed allocation is caught.
    """
    rows: list[VerifyRow] = []
    p = cfg.tgt.p_out
    for res in run_analyze(cfg):
        if res.report is None:
            rows.extend(VerifyRow(res.scheme, u, p, None, None, None, None, "skipped")
                        for u in ("u1", "u2", "total"))
            continue
        alloc = (allocations or {}).get(res.scheme, res.report.allocation)
        est = simulate(cfg.radio, cfg.geo, alloc, plan)
        for user, p_mc, ci in (("u1", est.p_hat_u1, est.ci95_u1), ("u2", est.p_hat_u2, est.ci95_u2)):
            rows.append(VerifyRow(res.scheme, user, p, p_mc, ci, alloc.total, est.mean_power,
                                  _outage_status(p, p_mc, ci, plan.n_trials)))
        rows.append(_power_row(res.scheme, alloc, est, plan.n_trials))
    return rows


def verification_passed(rows: list[VerifyRow]) -> bool:
    return not any(r.status == "fail" for r in rows)
