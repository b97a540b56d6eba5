"""Scenario configuration: flat ``key = value`` files with ``#`` comments.

Gains are given in dBi and the noise density in dBm/Hz; they are converted to
linear SI units here and nowhere else.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable

from netcoop.closed_form import Targets
from netcoop.link_budget import Geometry, RadioParams, db_to_linear, dbm_to_watt


class ConfigError(ValueError):
    def __init__(self, message: str, *, line: int | None = None, key: str | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
        self.key = key


@dataclass(frozen=True)
class ScenarioConfig:
    radio: RadioParams = field(default_factory=RadioParams)
    geo: Geometry = field(default_factory=Geometry)
    tgt: Targets = field(default_factory=Targets)
    intra_exchange_double_rate: bool = False

    def with_geometry(self, **changes: float) -> ScenarioConfig:
        return dataclasses.replace(self, geo=dataclasses.replace(self.geo, **changes))


def _linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def _w_hz_to_dbm_hz(w: float) -> float:
    return 10.0 * math.log10(w) + 30.0


@dataclass(frozen=True)
class _Key:
    section: str  # "radio", "geo", "tgt" or "flag"
    attr: str
    to_si: Callable[[float], float] | None = None
    from_si: Callable[[float], float] | None = None


KEYS: dict[str, _Key] = {
    "f_c_hz": _Key("radio", "f_c"),
    "f_s_hz": _Key("radio", "f_s"),
    "b_c_hz": _Key("radio", "B_c"),
    "b_s_hz": _Key("radio", "B_s"),
    "n0_dbm_hz": _Key("radio", "N0", dbm_to_watt, _w_hz_to_dbm_hz),
    "g_u1_dbi": _Key("radio", "G_U1", db_to_linear, _linear_to_db),
    "g_u2_dbi": _Key("radio", "G_U2", db_to_linear, _linear_to_db),
    "g_bs_dbi": _Key("radio", "G_BS", db_to_linear, _linear_to_db),
    "sigma2_12": _Key("radio", "sigma2_12"),
    "sigma2_21": _Key("radio", "sigma2_21"),
    "sigma2_1b": _Key("radio", "sigma2_1b"),
    "sigma2_2b": _Key("radio", "sigma2_2b"),
    "d_1b_m": _Key("geo", "d_1b"),
    "d_2b_m": _Key("geo", "d_2b"),
    "d_12_m": _Key("geo", "d_12"),
    "d_21_m": _Key("geo", "d_21"),
    "pout_target": _Key("tgt", "p_out"),
    "rate_bps": _Key("tgt", "rate"),
    "intra_exchange_double_rate": _Key("flag", "intra_exchange_double_rate"),
}

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def _parse_bool(key: str, text: str, line: int) -> bool:
    low = text.lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}", line=line, key=key)


def _check_value(key: str, value: float, line: int | None) -> None:
    key_def = KEYS[key]
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite", line=line, key=key)
    if key == "pout_target":
        if not 0.0 < value < 1.0:
            raise ConfigError(f"pout_target must lie in (0, 1), got {value!r}", line=line, key=key)
    elif key_def.to_si is None and not value > 0.0:
        raise ConfigError(f"{key} must be > 0, got {value!r}", line=line, key=key)


def parse_config(text: str) -> ScenarioConfig:
    """Parse config text; absent keys keep their defaults, unknown keys are errors."""
    values: dict[str, object] = {}
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, _, val = (part.strip() for part in line.partition("="))
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", line=lineno, key=key)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first set on line {seen[key]})", line=lineno, key=key)
        if not val:
            raise ConfigError(f"{key}: missing value", line=lineno, key=key)
        seen[key] = lineno
        if KEYS[key].section == "flag":
            values[key] = _parse_bool(key, val, lineno)
            continue
        try:
            num = float(val)
        except ValueError:
            raise ConfigError(f"{key}: not a number: {val!r}", line=lineno, key=key) from None
        _check_value(key, num, lineno)
        values[key] = num
    return _build(values, seen)


def _build(values: dict[str, object], lines: dict[str, int]) -> ScenarioConfig:
    sections: dict[str, dict[str, object]] = {"radio": {}, "geo": {}, "tgt": {}, "flag": {}}
    for key, val in values.items():
        key_def = KEYS[key]
        if key_def.to_si is not None:
            try:
                val = key_def.to_si(val)  # type: ignore[arg-type]
            except OverflowError:
                raise ConfigError(f"{key}: {val!r} overflows after dB conversion",
                                  line=lines.get(key), key=key) from None
        sections[key_def.section][key_def.attr] = val
    try:
        radio = RadioParams(**sections["radio"])  # type: ignore[arg-type]
        geo = Geometry(**sections["geo"])  # type: ignore[arg-type]
        tgt = Targets(**sections["tgt"])  # type: ignore[arg-type]
    except ValueError as exc:
        # dB keys can still overflow or underflow to 0/inf after conversion
        bad = next((k for k in values if KEYS[k].attr in str(exc)), None)
        raise ConfigError(str(exc), line=lines.get(bad) if bad else None, key=bad) from None
    return ScenarioConfig(radio, geo, tgt, bool(sections["flag"].get("intra_exchange_double_rate", False)))


def _exact_source(value: float, to_si: Callable[[float], float], from_si: Callable[[float], float]) -> float:
    """A file-domain number that converts back to exactly ``value``."""
    guess = from_si(value)
    if to_si(guess) == value:
        return guess
    lo = hi = guess
    for _ in range(256):
        lo = math.nextafter(lo, -math.inf)
        hi = math.nextafter(hi, math.inf)
        for cand in (lo, hi):
            if to_si(cand) == value:
                return cand
    raise ValueError(f"no exact file representation for {value!r}")


def format_config(cfg: ScenarioConfig) -> str:
    """Serialize every key; ``parse_config(format_config(c)) == c`` for parsed configs."""
    lines = []
    for key, key_def in KEYS.items():
        if key_def.section == "flag":
            lines.append(f"{key} = {'true' if cfg.intra_exchange_double_rate else 'false'}")
            continue
        value = getattr(getattr(cfg, key_def.section), key_def.attr)
        if key_def.to_si is not None:
            value = _exact_source(value, key_def.to_si, key_def.from_si)  # type: ignore[arg-type]
        lines.append(f"{key} = {value!r}")
    return "\n".join(lines) + "\n"


def load_config(path: str | None) -> ScenarioConfig:
    if path is None:
        return ScenarioConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    return parse_config(text)
