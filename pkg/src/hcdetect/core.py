"""Statistical kernel: standardization, Gaussian p-values, the ordered
higher-criticism statistic, the asymptotic rejection threshold, Tukey's
fraction-of-significances form, and kurtosis.

All moments are population moments (divide by m), computed with exact
(compensated) summation so results are invariant under permutation of the
input, bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import backend
from .errors import (
    DomainError,
    NonFiniteError,
    TooShortError,
    ZeroVarianceError,
)

MIN_LENGTH = 3

# Two-sided p-value clamp bounds. An exact p = 1 maps to the ceiling so the
# HC denominator never sees 1 - p = 0; the floor is one unit roundoff of 1.0
# (2**-54), the resolution below which 1 - erf(|x|/sqrt(2)) cannot
# distinguish a tail probability from zero. Clamping there keeps every HC
# component finite while preserving the ordering of extreme samples.
P_FLOOR = backend.P_FLOOR
P_CEIL = backend.P_CEIL


def _as_float_array(values, *, copy: bool = True) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=copy).reshape(-1)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Raw sampled values; the input to everything.

    ``sample_rate_hz`` is carried as metadata only; the method itself is
    unit-free after standardization.
    """

    values: np.ndarray
    sample_rate_hz: float | None = None

    def __post_init__(self):
        arr = _as_float_array(self.values)
        if arr.size < MIN_LENGTH:
            raise TooShortError(
                f"series has {arr.size} samples; at least {MIN_LENGTH} required"
            )
        bad = ~np.isfinite(arr)
        if bad.any():
            idx = int(np.argmax(bad))
            raise NonFiniteError(
                f"non-finite sample {arr[idx]!r} at index {idx}", index=idx
            )
        if self.sample_rate_hz is not None and not self.sample_rate_hz > 0:
            raise DomainError("sample_rate_hz must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class StandardizedSeries:
    """Zero-mean, unit-sd values plus the moments that were removed."""

    values: np.ndarray
    source_mean: float
    source_sd: float

    def __len__(self) -> int:
        return int(self.values.size)


class PValueRecord(NamedTuple):
    p: float
    original_index: int
    rank: int


@dataclass(frozen=True)
class KurtosisReport:
    """Fourth standardized moment, raw and excess (raw - 3)."""

    raw: float
    excess: float


@dataclass(frozen=True)
class HCProfile:
    """Rank-indexed HC values plus the permutation back to time indices.

    ``hc_values[i-1]`` is the HC component at rank ``i`` (p-values sorted
    ascending); ``original_indices[i-1]`` is the time index of the sample
    that produced that rank. ``max_rank`` is ``m`` unless the restricted
    variant (ranks up to m/2) was requested, in which case ``hc_max`` and
    downstream thresholding only consider ranks up to ``max_rank``.
    """

    hc_values: np.ndarray
    p_sorted: np.ndarray
    original_indices: np.ndarray
    hc_max: float
    asymptotic_threshold: float
    max_rank: int

    @property
    def m(self) -> int:
        return int(self.hc_values.size)

    def records(self) -> list[PValueRecord]:
        """Materialize the per-rank records (O(m); intended for small m)."""
        return [
            PValueRecord(float(p), int(j), i + 1)
            for i, (p, j) in enumerate(zip(self.p_sorted, self.original_indices))
        ]


def _population_moments(arr: np.ndarray) -> tuple[float, float]:
    m = arr.size
    mean = math.fsum(arr) / m
    var = math.fsum((x - mean) ** 2 for x in arr.tolist()) / m
    return mean, math.sqrt(var)


def standardize(series: TimeSeries) -> StandardizedSeries:
    """Map a series to zero mean and unit population standard deviation."""
    arr = series.values
    mean, sd = _population_moments(arr)
    if sd == 0.0 or not math.isfinite(sd):
        raise ZeroVarianceError("series is constant; standard deviation is zero")
    out = (arr - mean) / sd
    out.setflags(write=False)
    return StandardizedSeries(values=out, source_mean=mean, source_sd=sd)


def two_sided_p(x: float) -> float:
    """Clamped two-sided Gaussian p-value P(|N(0,1)| > |x|).

    The analytic value is 1 - Erf(|x|/sqrt(2)); an exact 1 maps to 0.99999
    and anything below the double-precision resolution floor (2**-54) maps
    to the floor, so downstream HC terms are always finite.
    """
    if not math.isfinite(x):
        raise DomainError("two_sided_p requires a finite input")
    return float(backend.two_sided_p(np.asarray([x]))[0])


def gaussian_tail_prob(x: float) -> float:
    """Unclamped P(|N(0,1)| > |x|), for oracle comparison."""
    return float(backend.gaussian_tail_prob(np.asarray([x]))[0])


def hc_from_sorted_p(p_sorted: np.ndarray) -> np.ndarray:
    """Evaluate the rank-indexed HC formula on already-sorted p-values.

    Clamped pipeline p-values keep the denominator positive; for raw inputs
    at exactly 0 or 1 a vanishing numerator yields 0, otherwise +-inf.
    """
    p = np.asarray(p_sorted, dtype=np.float64)
    m = p.size
    i = np.arange(1, m + 1, dtype=np.float64)
    num = np.sqrt(m) * (i / m - p)
    denom = np.sqrt(p * (1.0 - p))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / denom
    degenerate = denom == 0.0
    if degenerate.any():
        with np.errstate(invalid="ignore"):
            out[degenerate] = np.where(
                num[degenerate] == 0.0,
                0.0,
                np.sign(num[degenerate]) * np.inf,
            )
    return out


def asymptotic_threshold(m: int) -> float:
    """sqrt(2 ln ln m), natural logarithms; the null rejection curve."""
    if m < MIN_LENGTH:
        raise DomainError(f"asymptotic threshold needs m >= {MIN_LENGTH}, got {m}")
    return math.sqrt(2.0 * math.log(math.log(m)))


def tukey_hc(m: int, alpha: float, fraction: float) -> float:
    """sqrt(m) * (fraction - alpha) / sqrt(alpha (1 - alpha)).

    Callers compare against 2, the classical suggestion for rejecting the
    hypothesis.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0.0 <= fraction <= 1.0:
        raise DomainError(f"fraction must lie in [0, 1], got {fraction}")
    return math.sqrt(m) * (fraction - alpha) / math.sqrt(alpha * (1.0 - alpha))


def kurtosis(series: TimeSeries) -> KurtosisReport:
    """Population fourth standardized moment; excess subtracts 3 exactly."""
    arr = series.values
    mean, sd = _population_moments(arr)
    if sd == 0.0:
        raise ZeroVarianceError("series is constant; kurtosis is undefined")
    raw = math.fsum(((x - mean) / sd) ** 4 for x in arr.tolist()) / arr.size
    return KurtosisReport(raw=raw, excess=raw - 3.0)


def _rank_order(p: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Primary: p ascending. Ties (clamped extremes) keep the underlying
    # tail ordering, i.e. larger |z| first; exact |z| ties fall back to
    # time order. lexsort uses the last key as primary.
    m = p.size
    return np.lexsort((np.arange(m), -np.abs(z), p))


def hc_profile(
    standardized: StandardizedSeries, restricted_rank_range: bool = False
) -> HCProfile:
    """Sorted-p HC components over the full rank range, with permutation.

    ``restricted_rank_range`` limits ``hc_max`` (and thus downstream
    thresholding) to ranks i <= m/2, the restricted variant from the
    detection literature; off by default.
    """
    z = standardized.values
    m = z.size
    if m < MIN_LENGTH:
        raise TooShortError(f"profile needs at least {MIN_LENGTH} samples")
    p = backend.two_sided_p(z)
    order = _rank_order(p, z)
    p_sorted = p[order]
    hc = hc_from_sorted_p(p_sorted)
    max_rank = m // 2 if restricted_rank_range else m
    max_rank = max(max_rank, 1)
    hc_max = float(hc[:max_rank].max())
    hc.setflags(write=False)
    p_sorted.setflags(write=False)
    order.setflags(write=False)
    return HCProfile(
        hc_values=hc,
        p_sorted=p_sorted,
        original_indices=order,
        hc_max=hc_max,
        asymptotic_threshold=asymptotic_threshold(m),
        max_rank=max_rank,
    )


def profile_series(
    series: TimeSeries, restricted_rank_range: bool = False
) -> HCProfile:
    """Convenience wrapper: standardize, then profile."""
    return hc_profile(standardize(series), restricted_rank_range)


def hc_test_statistic(values: np.ndarray) -> float:
    """Null-calibrated HC statistic of raw samples against N(0,1).

    Used by the simulation lab: no standardization (a pure mean shift must
    remain detectable), and the maximum is restricted to ranks i <= m/2
    with p > 1/m. Without that restriction the smallest order statistics
    dominate the null distribution and the statistic sits above
    sqrt(2 ln ln m) for any desk-scale m, which would make every crossing
    experiment degenerate.
    """
    x = np.asarray(values, dtype=np.float64).reshape(-1)
    m = x.size
    if m < MIN_LENGTH:
        raise TooShortError(f"statistic needs at least {MIN_LENGTH} samples")
    p = np.sort(backend.two_sided_p(x))
    hc = hc_from_sorted_p(p)
    half = max(m // 2, 1)
    keep = p[:half] > 1.0 / m
    if keep.any():
        return float(hc[:half][keep].max())
    return float(hc.max())
