import numpy as np
import pytest

from hcdetect import TimeSeries


def inject_spikes(
    noise: np.ndarray,
    locations,
    amplitude: float = 12.0,
    width: int = 5,
) -> np.ndarray:
    """Add constant-amplitude deflections of the given width."""
    out = noise.copy()
    for loc in locations:
        out[loc : loc + width] += amplitude
    return out


def spaced_locations(
    rng: np.random.Generator, m: int, count: int, min_separation: int = 220
) -> np.ndarray:
    """Random spike onsets separated by more than ``min_separation``."""
    slots = m // min_separation - 2
    picks = rng.permutation(slots)[:count] * min_separation + 300
    picks.sort()
    return picks


@pytest.fixture
def noise_series():
    rng = np.random.default_rng(1234)
    return TimeSeries(values=rng.standard_normal(20000))
