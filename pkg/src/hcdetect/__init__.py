"""Higher-criticism detection and sorting of sparse signals in noisy
time series, plus the Monte Carlo lab for detection-boundary studies."""

__version__ = "0.1.0"

from .core import (
    HCProfile,
    KurtosisReport,
    PValueRecord,
    StandardizedSeries,
    TimeSeries,
    asymptotic_threshold,
    gaussian_tail_prob,
    hc_from_sorted_p,
    hc_profile,
    hc_test_statistic,
    kurtosis,
    profile_series,
    standardize,
    tukey_hc,
    two_sided_p,
)
from .cluster import (
    ClusterModel,
    ThresholdSet,
    best_model,
    kmeans_1d,
    select_k,
    silhouette,
    thresholds_from,
)
from .detector import (
    DetectionConfig,
    DetectionReport,
    Segment,
    detect,
    localize,
    mask,
)
from .simlab import (
    BoundaryCurve,
    BoundaryPoint,
    GeneratorSpec,
    SimConfig,
    TracePoint,
    boundary_grid_mean,
    boundary_grid_sparse,
    default_m_grid,
    find_crossing,
    mc_hc,
    sample,
)
from .backend import backend_name

__all__ = [
    "__version__",
    "TimeSeries",
    "StandardizedSeries",
    "PValueRecord",
    "HCProfile",
    "KurtosisReport",
    "standardize",
    "two_sided_p",
    "gaussian_tail_prob",
    "hc_profile",
    "profile_series",
    "hc_from_sorted_p",
    "hc_test_statistic",
    "asymptotic_threshold",
    "tukey_hc",
    "kurtosis",
    "ClusterModel",
    "ThresholdSet",
    "kmeans_1d",
    "silhouette",
    "select_k",
    "best_model",
    "thresholds_from",
    "DetectionConfig",
    "DetectionReport",
    "Segment",
    "detect",
    "localize",
    "mask",
    "GeneratorSpec",
    "SimConfig",
    "TracePoint",
    "BoundaryPoint",
    "BoundaryCurve",
    "default_m_grid",
    "sample",
    "mc_hc",
    "find_crossing",
    "boundary_grid_mean",
    "boundary_grid_sparse",
    "backend_name",
]
