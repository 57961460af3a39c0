import math
import re
from typing import Union

from core.exceptions import InvalidArgumentException

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z]*)\s*$")

_FREQUENCY_SCALE = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_POWER_SCALE = {"w": 1.0, "mw": 1e-3}


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    if value <= 0:
        return -math.inf
    return 10.0 * math.log10(value)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def _split(raw: str) -> tuple[float, str]:
    match = _QUANTITY.match(raw)
    if not match:
        raise InvalidArgumentException(detail=f"Cannot parse quantity '{raw}'")
    return float(match.group(1)), match.group(2).lower()


def parse_power(raw: Union[str, float, int]) -> float:
    """Power in watts; accepts 'dBm', 'dBW', 'mW' and 'W' suffixes"""
    if isinstance(raw, (int, float)):
        return float(raw)
    value, unit = _split(raw)
    if unit in ("", "w", "mw"):
        return value * _POWER_SCALE.get(unit or "w", 1.0)
    if unit == "dbm":
        return dbm_to_watts(value)
    if unit == "dbw":
        return db_to_linear(value)
    raise InvalidArgumentException(detail=f"Unknown power unit '{unit}' in '{raw}'")


def parse_frequency(raw: Union[str, float, int]) -> float:
    """Frequency or bandwidth in hertz"""
    if isinstance(raw, (int, float)):
        return float(raw)
    value, unit = _split(raw)
    scale = _FREQUENCY_SCALE.get(unit or "hz")
    if scale is None:
        raise InvalidArgumentException(detail=f"Unknown frequency unit '{unit}' in '{raw}'")
    return value * scale


def parse_ratio(raw: Union[str, float, int]) -> float:
    """Linear ratio; a 'dB' suffix is converted from decibels"""
    if isinstance(raw, (int, float)):
        return float(raw)
    value, unit = _split(raw)
    if unit == "":
        return value
    if unit == "db":
        return db_to_linear(value)
    raise InvalidArgumentException(detail=f"Unknown ratio unit '{unit}' in '{raw}'")


def parse_decibels(raw: Union[str, float, int]) -> float:
    """Attenuation kept in dB; the suffix is optional"""
    if isinstance(raw, (int, float)):
        return float(raw)
    value, unit = _split(raw)
    if unit not in ("", "db"):
        raise InvalidArgumentException(detail=f"Expected dB, got '{unit}' in '{raw}'")
    return value
