"""Energy efficiency of two-user cellular uplink cooperation schemes.

Closed-form minimum transmit powers and bits-per-joule for traditional
non-cooperation, intra-network cooperation and inter-network cooperation,
plus a Monte Carlo protocol simulator used to check them.
"""

from netcoop.link_budget import Geometry, Link, RadioParams, friis_factor, mean_snr_per_watt, noise_power
from netcoop.special import lambert_w0, lambert_wm1
from netcoop.closed_form import (
    EfficiencyReport,
    InfeasibleError,
    PowerAllocation,
    Targets,
    inter_efficiency,
    intra_powers_and_efficiency,
    traditional_efficiency,
)

__all__ = [
    "EfficiencyReport",
    "Geometry",
    "InfeasibleError",
    "Link",
    "PowerAllocation",
    "RadioParams",
    "Targets",
    "friis_factor",
    "inter_efficiency",
    "intra_powers_and_efficiency",
    "lambert_w0",
    "lambert_wm1",
    "mean_snr_per_watt",
    "noise_power",
    "traditional_efficiency",
]
