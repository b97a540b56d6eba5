"""Free-space link budget: Friis factors, thermal noise and mean SNR per watt.

Everything here is strict SI (Hz, m, W). dB conversions live at the config
boundary only.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


def dbm_to_watt(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _require_positive(**values: float) -> None:
    for name, v in values.items():
        if not (v > 0.0) or math.isinf(v):
            raise ValueError(f"{name} must be finite and > 0, got {v!r}")


@dataclass(frozen=True)
class RadioParams:
    """Radio parameters shared by both users and both networks.

    Defaults: 1800 MHz / 2 MHz cellular, 2.4 GHz / 20 MHz short-range,
    0 dBi antennas, unit-mean Rayleigh fading, -174 dBm/Hz noise.
    """

    f_c: float = 1800e6
    B_c: float = 2e6
    f_s: float = 2.4e9
    B_s: float = 20e6
    N0: float = dbm_to_watt(-174.0)
    G_U1: float = 1.0
    G_U2: float = 1.0
    G_BS: float = 1.0
    sigma2_12: float = 1.0
    sigma2_21: float = 1.0
    sigma2_1b: float = 1.0
    sigma2_2b: float = 1.0

    def __post_init__(self) -> None:
        _require_positive(**dataclasses.asdict(self))

    @property
    def wavelength_c(self) -> float:
        return SPEED_OF_LIGHT / self.f_c

    @property
    def wavelength_s(self) -> float:
        return SPEED_OF_LIGHT / self.f_s

    def exchange_on_cellular(self) -> RadioParams:
        """Copy with the short-range band replaced by the cellular band."""
        return dataclasses.replace(self, f_s=self.f_c, B_s=self.B_c)


@dataclass(frozen=True)
class Geometry:
    """Link distances in meters. ``d_21`` defaults to ``d_12``."""

    d_1b: float = 1000.0
    d_2b: float = 1000.0
    d_12: float = 20.0
    d_21: float | None = None

    def __post_init__(self) -> None:
        if self.d_21 is None:
            object.__setattr__(self, "d_21", self.d_12)
        _require_positive(**dataclasses.asdict(self))


class Link(enum.Enum):
    U1_BS = "U1->BS"
    U2_BS = "U2->BS"
    U1_U2 = "U1->U2"
    U2_U1 = "U2->U1"


def friis_factor(f: float, d: float, g_tx: float = 1.0, g_rx: float = 1.0) -> float:
    """Received power per watt transmitted, fading excluded: (lambda/(4 pi d))^2 g_tx g_rx."""
    _require_positive(f=f, d=d, g_tx=g_tx, g_rx=g_rx)
    lam = SPEED_OF_LIGHT / f
    return (lam / (4.0 * math.pi * d)) ** 2 * g_tx * g_rx


def noise_power(n0: float, b: float) -> float:
    _require_positive(n0=n0, b=b)
    return n0 * b


def mean_snr_per_watt(link: Link, radio: RadioParams, geo: Geometry) -> float:
    """Mean received SNR per watt of transmit power on ``link``.

    Includes the mean fading power, so multiplying by a transmit power gives
    the mean of the exponentially distributed instantaneous SNR.
    """
    if link is Link.U1_BS:
        gain = friis_factor(radio.f_c, geo.d_1b, radio.G_U1, radio.G_BS) * radio.sigma2_1b
        bw = radio.B_c
    elif link is Link.U2_BS:
        gain = friis_factor(radio.f_c, geo.d_2b, radio.G_U2, radio.G_BS) * radio.sigma2_2b
        bw = radio.B_c
    elif link is Link.U1_U2:
        gain = friis_factor(radio.f_s, geo.d_12, radio.G_U1, radio.G_U2) * radio.sigma2_12
        bw = radio.B_s
    elif link is Link.U2_U1:
        gain = friis_factor(radio.f_s, geo.d_21, radio.G_U1, radio.G_U2) * radio.sigma2_21
        bw = radio.B_s
    else:
        raise ValueError(f"unknown link {link!r}")
    return gain / noise_power(radio.N0, bw)
