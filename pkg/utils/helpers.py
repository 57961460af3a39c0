import math
from typing import Optional

import numpy as np

SCENARIO_STREAM = 0
GAME_STREAM = 1


def derive_run_seed(base_seed: int, num_uavs: int, run_index: int) -> int:
    """Deterministic 64-bit seed for one run of a sweep point"""
    state = np.random.SeedSequence([base_seed, num_uavs, run_index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def make_rng(seed: int, stream: int) -> np.random.Generator:
    """Independent PCG64 stream for a given seed and purpose"""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))


def finite_or_none(value: float) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return value


def safe_delta(new: float, old: float) -> Optional[float]:
    """Difference that never yields NaN; None when either side is infinite"""
    if math.isfinite(new) and math.isfinite(old):
        return new - old
    return None
