"""One-dimensional k-means, exact silhouette scoring, and the per-cluster
detection thresholds (cluster mean plus a quarter of the cluster range).

Optimal 1-D clusters are contiguous in sorted order. Small inputs (up to
``EXACT_SIZE_LIMIT`` points) are therefore solved exactly by dynamic
programming over contiguous partitions, which guarantees the global
optimum that restarted local search cannot; larger inputs use Lloyd's
algorithm with D^2-weighted seeded initialization and a fixed number of
independent restarts, implemented on the sorted values so each iteration
is a handful of O(k log m) boundary updates. Contiguity also makes the
silhouette score exactly computable in O(m k log m) with prefix sums
instead of the quadratic pairwise form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NonFiniteError,
    TooFewPointsError,
    UndefinedSilhouetteError,
)

DEFAULT_RESTARTS = 10
MAX_ITER = 300
EXACT_SIZE_LIMIT = 512


@dataclass(frozen=True)
class ClusterModel:
    """Converged 1-D k-means partition.

    ``assignment[i]`` is the cluster id of ``points[i]`` in the caller's
    original order; ids are sorted by ascending centroid. ``silhouette`` is
    None for k = 1, where the score is undefined.
    """

    k: int
    centroids: np.ndarray
    assignment: np.ndarray
    inertia: float
    silhouette: float | None
    seed: int


@dataclass(frozen=True)
class ThresholdSet:
    """Per-cluster thresholds, ascending, with the (min, max, mean) ranges
    of the clusters they came from (aligned index-wise)."""

    thresholds: tuple[float, ...]
    cluster_ranges: tuple[tuple[float, float, float], ...]


def _check_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64).reshape(-1)
    if not np.isfinite(arr).all():
        idx = int(np.argmax(~np.isfinite(arr)))
        raise NonFiniteError(f"non-finite point at index {idx}", index=idx)
    return arr


def _init_centroids(
    srt: np.ndarray, k: int, rng: np.random.Generator
) -> np.ndarray:
    # D^2-weighted sampling (k-means++ style) on the sorted values.
    cent = np.empty(k)
    cent[0] = srt[rng.integers(srt.size)]
    d2 = (srt - cent[0]) ** 2
    for j in range(1, k):
        total = d2.sum()
        if total > 0.0:
            target = rng.random() * total
            pos = int(np.searchsorted(np.cumsum(d2), target))
            pos = min(pos, srt.size - 1)
        else:
            pos = int(rng.integers(srt.size))
        cent[j] = srt[pos]
        np.minimum(d2, (srt - cent[j]) ** 2, out=d2)
    return np.sort(cent)


def _lloyd(
    srt: np.ndarray,
    pref: np.ndarray,
    pref2: np.ndarray,
    cent: np.ndarray,
    k: int,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Iterate boundary-based Lloyd updates on sorted values.

    Returns (cuts, centroids, inertia); cluster j holds srt[cuts[j]:cuts[j+1]].
    A point equidistant to two centroids joins the lower one.
    """
    m = srt.size
    prev_cuts = None
    repairs = 0
    for _ in range(MAX_ITER):
        bounds = 0.5 * (cent[1:] + cent[:-1])
        inner = np.searchsorted(srt, bounds, side="right")
        cuts = np.concatenate(([0], inner, [m]))
        counts = np.diff(cuts)
        if (counts == 0).any():
            repairs += 1
            if repairs > k + 2:
                # Duplicate-heavy input that boundaries cannot separate;
                # force an even contiguous split to keep clusters non-empty.
                cuts = np.array([round(j * m / k) for j in range(k + 1)])
                break
            # Empty-cluster repair: hand the empty cluster the point
            # farthest from its current centroid.
            assign = np.repeat(np.arange(k), counts)
            dist = np.abs(srt - cent[assign])
            for e in np.nonzero(counts == 0)[0]:
                far = int(np.argmax(dist))
                cent[e] = srt[far]
                dist[far] = -1.0
            cent = np.sort(cent)
            prev_cuts = None
            continue
        sums = pref[cuts[1:]] - pref[cuts[:-1]]
        new_cent = sums / counts
        if prev_cuts is not None and np.array_equal(cuts, prev_cuts):
            break
        prev_cuts = cuts
        cent = new_cent
    counts = np.diff(cuts)
    sums = pref[cuts[1:]] - pref[cuts[:-1]]
    sq = pref2[cuts[1:]] - pref2[cuts[:-1]]
    cent = sums / counts
    inertia = float(np.sum(sq - sums * sums / counts))
    return cuts, cent, inertia


def _exact_contiguous(
    pref: np.ndarray, pref2: np.ndarray, n: int, k: int
) -> tuple[np.ndarray, float]:
    """Globally optimal contiguous partition by O(k n^2) dynamic
    programming over segment sums of squared error. Returns (cuts, sse)."""

    def seg_cost(i: np.ndarray, j: int) -> np.ndarray:
        count = j - i
        s = pref[j] - pref[i]
        return (pref2[j] - pref2[i]) - s * s / count

    idx = np.arange(n + 1)
    best = np.full((k + 1, n + 1), np.inf)
    arg = np.zeros((k + 1, n + 1), dtype=np.int64)
    best[0, 0] = 0.0
    for c in range(1, k + 1):
        for j in range(c, n - (k - c) + 1):
            starts = idx[c - 1 : j]
            totals = best[c - 1, c - 1 : j] + seg_cost(starts, j)
            pos = int(np.argmin(totals))
            best[c, j] = totals[pos]
            arg[c, j] = starts[pos]
    cuts = np.empty(k + 1, dtype=np.int64)
    cuts[k] = n
    for c in range(k, 0, -1):
        cuts[c - 1] = arg[c, cuts[c]]
    return cuts, float(best[k, n])


def _silhouette_from_cuts(srt: np.ndarray, cuts: np.ndarray, k: int) -> float:
    total = 0.0
    clusters = [srt[cuts[j] : cuts[j + 1]] for j in range(k)]
    prefs = [np.concatenate(([0.0], np.cumsum(c))) for c in clusters]
    for j in range(k):
        cl = clusters[j]
        n = cl.size
        if n == 1:
            continue  # singleton contributes 0
        r = np.arange(1, n + 1)
        s = prefs[j]
        intra = (r * cl - s[1:]) + ((s[n] - s[1:]) - (n - r) * cl)
        a = intra / (n - 1)
        b = np.full(n, np.inf)
        for h in range(k):
            if h == j:
                continue
            other = clusters[h]
            so = prefs[h]
            no = other.size
            q = np.searchsorted(other, cl)
            d = (q * cl - so[q]) + ((so[no] - so[q]) - (no - q) * cl)
            np.minimum(b, d / no, out=b)
        denom = np.maximum(a, b)
        with np.errstate(invalid="ignore"):
            scores = np.where(denom > 0.0, (b - a) / denom, 0.0)
        total += float(scores.sum())
    return total / srt.size


def kmeans_1d(
    points,
    k: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> ClusterModel:
    """Deterministic 1-D k-means: exact for small inputs, best-of-restarts
    Lloyd above ``EXACT_SIZE_LIMIT`` points.

    Restart r draws its own generator from (seed, r), so the result is
    independent of execution order; the exact path ignores the seed.
    """
    arr = _check_points(points)
    m = arr.size
    if k < 1:
        raise TooFewPointsError("k must be at least 1")
    if m < k:
        raise TooFewPointsError(f"{m} points cannot form {k} clusters")

    order = np.argsort(arr, kind="stable")
    srt = arr[order]
    pref = np.concatenate(([0.0], np.cumsum(srt)))
    pref2 = np.concatenate(([0.0], np.cumsum(srt * srt)))

    if m <= EXACT_SIZE_LIMIT:
        cuts, inertia = _exact_contiguous(pref, pref2, m, k)
        cent = (pref[cuts[1:]] - pref[cuts[:-1]]) / np.diff(cuts)
    else:
        best: tuple[float, np.ndarray, np.ndarray] | None = None
        for r in range(restarts):
            rng = np.random.default_rng((seed, r))
            cent0 = _init_centroids(srt, k, rng)
            cuts, cent, inertia = _lloyd(srt, pref, pref2, cent0.copy(), k)
            if best is None or inertia < best[0]:
                best = (inertia, cuts, cent)
        inertia, cuts, cent = best

    inertia = max(inertia, 0.0)  # guard tiny negative cancellation residue
    labels_sorted = np.repeat(np.arange(k), np.diff(cuts))
    assignment = np.empty(m, dtype=np.int64)
    assignment[order] = labels_sorted
    sil = _silhouette_from_cuts(srt, cuts, k) if k >= 2 else None
    cent = cent.copy()
    cent.setflags(write=False)
    assignment.setflags(write=False)
    return ClusterModel(
        k=k,
        centroids=cent,
        assignment=assignment,
        inertia=inertia,
        silhouette=sil,
        seed=seed,
    )


def silhouette(points, model: ClusterModel) -> float:
    """Mean silhouette score of a fitted partition.

    a(i) is the mean intra-cluster distance excluding the point itself,
    b(i) the smallest mean distance to another cluster; singletons
    contribute 0. Exact, via per-cluster prefix sums.
    """
    if model.k < 2:
        raise UndefinedSilhouetteError("silhouette requires at least 2 clusters")
    arr = _check_points(points)
    if arr.size != model.assignment.size:
        raise TooFewPointsError("model does not cover the given points")
    clusters = [np.sort(arr[model.assignment == j]) for j in range(model.k)]
    if any(c.size == 0 for c in clusters):
        raise TooFewPointsError("model has an empty cluster")
    prefs = [np.concatenate(([0.0], np.cumsum(c))) for c in clusters]
    total = 0.0
    for j, cl in enumerate(clusters):
        n = cl.size
        if n == 1:
            continue
        r = np.arange(1, n + 1)
        s = prefs[j]
        intra = (r * cl - s[1:]) + ((s[n] - s[1:]) - (n - r) * cl)
        a = intra / (n - 1)
        b = np.full(n, np.inf)
        for h, other in enumerate(clusters):
            if h == j:
                continue
            so = prefs[h]
            no = other.size
            q = np.searchsorted(other, cl)
            d = (q * cl - so[q]) + ((so[no] - so[q]) - (no - q) * cl)
            np.minimum(b, d / no, out=b)
        denom = np.maximum(a, b)
        with np.errstate(invalid="ignore"):
            scores = np.where(denom > 0.0, (b - a) / denom, 0.0)
        total += float(scores.sum())
    return total / arr.size


def best_model(
    points,
    k_min: int = 2,
    k_max: int = 10,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> ClusterModel:
    """Fit k in [k_min, k_max] and keep the silhouette maximizer.

    Ties go to the smallest k (strictly-greater replacement).
    """
    arr = _check_points(points)
    if not 2 <= k_min <= k_max:
        raise TooFewPointsError(f"need 2 <= k_min <= k_max, got [{k_min}, {k_max}]")
    if k_max > arr.size:
        raise TooFewPointsError(
            f"k_max={k_max} exceeds the number of points ({arr.size})"
        )
    chosen: ClusterModel | None = None
    for k in range(k_min, k_max + 1):
        model = kmeans_1d(arr, k, seed=seed, restarts=restarts)
        if chosen is None or model.silhouette > chosen.silhouette:
            chosen = model
    return chosen


def select_k(points, k_min: int = 2, k_max: int = 10, seed: int = 0) -> int:
    """Silhouette-suggested number of clusters."""
    return best_model(points, k_min, k_max, seed).k


def thresholds_from(
    model: ClusterModel, points, factor: float = 0.25
) -> ThresholdSet:
    """One threshold per cluster: mean + factor * (max - min), ascending.

    ``factor`` defaults to the quarter-range rule; it is a knob because
    sensitivity studies need one.
    """
    arr = _check_points(points)
    if arr.size != model.assignment.size:
        raise TooFewPointsError("model does not cover the given points")
    rows = []
    for j in range(model.k):
        members = arr[model.assignment == j]
        if members.size == 0:
            raise TooFewPointsError(f"cluster {j} is empty")
        lo = float(members.min())
        hi = float(members.max())
        mean = float(members.mean())
        rows.append((mean + factor * (hi - lo), (lo, hi, mean)))
    rows.sort(key=lambda t: t[0])
    return ThresholdSet(
        thresholds=tuple(t for t, _ in rows),
        cluster_ranges=tuple(r for _, r in rows),
    )
