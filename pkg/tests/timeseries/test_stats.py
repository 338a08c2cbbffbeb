import unittest

import numpy as np

from src.modalwatch.exceptions import DegenerateChannel, EmptyRange
from src.modalwatch.timeseries import compute_stats, fill_gaps
from src.modalwatch.timeseries.calendar import from_epoch_hour
from tests.utils import START_HOUR, make_series, synthetic_series


def varied_covariates(n):
    i = np.arange(n, dtype=float)
    return np.stack([10 + i, 0.1 * i, 50 + i, 1 + i, 2 + i, 5 + 10 * i], axis=1)


class TestComputeStats(unittest.TestCase):
    def test_sample_standard_deviation(self):
        targets = np.tile(np.arange(1.0, 6.0)[:, None], (1, 5)) + np.arange(5) * 0.5
        stats = compute_stats(make_series(targets, covariates=varied_covariates(5)))

        self.assertAlmostEqual(stats.target_mean[0], 3.0)
        self.assertAlmostEqual(stats.target_std[0], 1.5811388300841898, places=12)

    def test_two_points(self):
        targets = np.array([[1.0, 1.0, 1.0, 1.0, 1.0], [3.0, 2.0, 2.0, 2.0, 2.0]])
        stats = compute_stats(make_series(targets, covariates=varied_covariates(2)))

        self.assertAlmostEqual(stats.target_mean[0], 2.0)
        self.assertAlmostEqual(stats.target_std[0], np.sqrt(2.0))

    def test_constant_channel(self):
        targets = np.tile([2.0, 1.0, 1.0, 1.0, 1.0], (3, 1))
        targets[:, 1:] += np.arange(3)[:, None]
        with self.assertRaises(DegenerateChannel) as context:
            compute_stats(make_series(targets, covariates=varied_covariates(3)))
        self.assertEqual(context.exception.channel, "f1")

    def test_empty_range(self):
        series = synthetic_series(hours=48)
        with self.assertRaises(EmptyRange):
            compute_stats(series, from_epoch_hour(START_HOUR + 100), from_epoch_hour(START_HOUR + 200))

    def test_range_is_half_open(self):
        series = synthetic_series(hours=48)
        stats = compute_stats(series, from_epoch_hour(START_HOUR), from_epoch_hour(START_HOUR + 24))
        self.assertAlmostEqual(stats.target_mean[2], series.targets[:24, 2].mean(), places=12)

    def test_standardize_round_trip(self):
        series = synthetic_series(hours=200)
        stats = compute_stats(series)
        restored = stats.destandardize_targets(stats.standardize_targets(series.targets))
        np.testing.assert_allclose(restored, series.targets, rtol=1e-12)

    def test_filled_values_are_skipped_by_default(self):
        series = synthetic_series(hours=100)
        targets = series.targets.copy()
        targets[50, 0] = np.nan
        holed = make_series(targets, covariates=series.covariates)
        filled = fill_gaps(holed)

        self.assertEqual(compute_stats(filled), compute_stats(holed))
        self.assertNotEqual(
            compute_stats(filled, include_synthetic=True).target_mean[0],
            compute_stats(holed).target_mean[0],
        )
