"""Localization, masking, and the end-to-end detection pipeline."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import inject_spikes, spaced_locations
from hcdetect import DetectionConfig, TimeSeries, detect, localize, mask
from hcdetect.detector import Segment
from hcdetect.errors import IndexOutOfRangeError, NoClustersError


class TestLocalize:
    def test_single_trigger(self):
        segs = localize({100}, window=50, m=10_000)
        assert [(s.start, s.end) for s in segs] == [(50, 150)]
        assert segs[0].triggers == (100,)

    def test_nearby_triggers_merge(self):
        segs = localize({100, 120}, window=50, m=10_000)
        assert [(s.start, s.end) for s in segs] == [(50, 170)]
        assert segs[0].triggers == (100, 120)

    def test_boundary_clipping(self):
        segs = localize({10}, window=50, m=10_000)
        assert [(s.start, s.end) for s in segs] == [(0, 60)]

    def test_touching_intervals_merge(self):
        segs = localize({100, 201}, window=50, m=10_000)
        assert [(s.start, s.end) for s in segs] == [(50, 251)]

    def test_disjoint_intervals_stay_apart(self):
        segs = localize({100, 300}, window=50, m=10_000)
        assert [(s.start, s.end) for s in segs] == [(50, 150), (250, 350)]

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRangeError):
            localize({-1}, window=10, m=100)
        with pytest.raises(IndexOutOfRangeError):
            localize({100}, window=10, m=100)

    def test_peak_follows_scores_with_tie_to_smallest(self):
        scores = {100: 5.0, 120: 9.0, 300: 2.0, 320: 2.0}
        segs = localize(set(scores), window=50, m=10_000, scores=scores)
        assert segs[0].peak_index == 120 and segs[0].peak_hc == 9.0
        assert segs[1].peak_index == 300  # tie resolved to the smaller index

    @given(
        st.sets(st.integers(min_value=0, max_value=999), min_size=1, max_size=40),
        st.integers(min_value=0, max_value=100),
    )
    @settings(max_examples=60, deadline=None)
    def test_segments_cover_triggers_and_are_disjoint(self, triggers, window):
        segs = localize(triggers, window=window, m=1000)
        for a, b in zip(segs, segs[1:]):
            assert a.end + 1 < b.start
        covered = set()
        for seg in segs:
            covered.update(range(seg.start, seg.end + 1))
            assert seg.triggers  # every segment holds at least one trigger
        assert set(triggers) <= covered


class TestMask:
    def test_no_segments_zeroes_everything(self):
        series = TimeSeries(values=[1.0, 2.0, 3.0, 4.0, 5.0])
        out = mask(series, [])
        np.testing.assert_array_equal(out.values, np.zeros(5))

    def test_full_cover_is_identity(self):
        series = TimeSeries(values=[1.0, 2.0, 3.0, 4.0, 5.0])
        seg = Segment(start=0, end=4, peak_index=0, peak_hc=0.0)
        np.testing.assert_array_equal(mask(series, [seg]).values, series.values)

    def test_partial_cover(self):
        series = TimeSeries(values=[1.0, 2.0, 3.0, 4.0, 5.0])
        seg = Segment(start=1, end=3, peak_index=2, peak_hc=0.0)
        np.testing.assert_array_equal(
            mask(series, [seg]).values, [0.0, 2.0, 3.0, 4.0, 0.0]
        )

    def test_idempotent(self):
        rng = np.random.default_rng(3)
        series = TimeSeries(values=rng.standard_normal(100))
        segs = [
            Segment(start=10, end=20, peak_index=15, peak_hc=1.0),
            Segment(start=50, end=60, peak_index=50, peak_hc=1.0),
        ]
        once = mask(series, segs)
        twice = mask(once, segs)
        np.testing.assert_array_equal(once.values, twice.values)

    def test_out_of_bounds_segment(self):
        series = TimeSeries(values=[1.0, 2.0, 3.0])
        with pytest.raises(IndexOutOfRangeError):
            mask(series, [Segment(start=0, end=5, peak_index=0, peak_hc=0.0)])


class TestDetect:
    def _spiked_series(self, seed=0, m=100_000, count=10):
        rng = np.random.default_rng(seed)
        noise = rng.standard_normal(m)
        locs = spaced_locations(rng, m, count)
        return TimeSeries(values=inject_spikes(noise, locs)), locs

    def test_min_threshold_above_everything_empties_segments(self, noise_series):
        config = DetectionConfig(min_threshold=1e30)
        report = detect(noise_series, config)
        assert report.per_threshold[0][0] == 1e30
        assert report.per_threshold[0][1] == ()

    def test_injected_deflections_recovered_at_smallest_threshold(self):
        series, locs = self._spiked_series(seed=42)
        report = detect(series)
        threshold, segments = report.per_threshold[0]
        assert len(segments) == len(locs)
        for loc in locs:
            assert any(seg.start <= loc <= seg.end for seg in segments)
        assert report.reject_normality

    def test_threshold_nesting(self):
        series, _ = self._spiked_series(seed=7)
        report = detect(series)
        thresholds = [t for t, _ in report.per_threshold]
        assert thresholds == sorted(thresholds)
        covered = [
            set().union(*(set(s.triggers) for s in segs)) if segs else set()
            for _, segs in report.per_threshold
        ]
        for lower, higher in zip(covered, covered[1:]):
            assert higher <= lower

    def test_affine_invariance_of_segments(self):
        series, _ = self._spiked_series(seed=9, m=20_000, count=4)
        base = detect(series)
        mapped = detect(TimeSeries(values=3.0 * series.values + 100.0))
        assert len(base.per_threshold) == len(mapped.per_threshold)
        for (_, a), (_, b) in zip(base.per_threshold, mapped.per_threshold):
            assert [(s.start, s.end, s.peak_index) for s in a] == [
                (s.start, s.end, s.peak_index) for s in b
            ]
        assert base.kurtosis.raw == pytest.approx(mapped.kurtosis.raw, rel=1e-9)

    def test_segments_contain_triggers_and_peaks(self):
        series, _ = self._spiked_series(seed=12, m=50_000, count=6)
        report = detect(series)
        for _, segments in report.per_threshold:
            for seg in segments:
                assert seg.triggers
                assert seg.start <= seg.peak_index <= seg.end
                assert seg.peak_index in seg.triggers

    def test_report_consistency(self):
        series, _ = self._spiked_series(seed=13, m=20_000, count=3)
        report = detect(series)
        assert report.m == 20_000
        assert report.reject_normality == (
            report.hc_max > report.asymptotic_threshold
        )
        assert report.hc_ratio == pytest.approx(
            report.hc_max / report.asymptotic_threshold
        )

    def test_too_short_for_clusters(self):
        with pytest.raises(NoClustersError):
            detect(TimeSeries(values=[1.0, 2.0, 3.0, 4.0]))

    def test_determinism(self):
        series, _ = self._spiked_series(seed=21, m=20_000, count=3)
        a = detect(series)
        b = detect(series)
        assert a == b
