from .units import (
    db_to_linear,
    linear_to_db,
    dbm_to_watts,
    parse_power,
    parse_frequency,
    parse_ratio,
    parse_decibels
)

from .helpers import (
    SCENARIO_STREAM,
    GAME_STREAM,
    derive_run_seed,
    make_rng,
    finite_or_none,
    safe_delta
)

__all__ = [
    # Units
    "db_to_linear",
    "linear_to_db",
    "dbm_to_watts",
    "parse_power",
    "parse_frequency",
    "parse_ratio",
    "parse_decibels",
    # Helpers
    "SCENARIO_STREAM",
    "GAME_STREAM",
    "derive_run_seed",
    "make_rng",
    "finite_or_none",
    "safe_delta"
]
