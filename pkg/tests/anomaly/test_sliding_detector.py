import unittest

import numpy as np

from src.modalwatch.anomaly import DetectorConfig, SlidingDetector, run_sliding
from src.modalwatch.exceptions import SeriesTooShort, WindowMismatch
from src.modalwatch.forecaster import ModelConfig, init
from src.modalwatch.synthbench import Scenario
from src.modalwatch.synthbench.generator import inject
from src.modalwatch.timeseries import Series, compute_stats
from src.modalwatch.timeseries.calendar import from_epoch_hour
from tests.utils import START_HOUR, make_series, synthetic_series

CONFIG = ModelConfig(
    window=8, hidden=8, heads=1, hour_embedding=2, day_embedding=2, month_embedding=2
)


def banded_model(model, center, half_width):
    """A model whose p01 to p99 band is center +/- half_width (Hz) at every hour."""
    stats = model.stats
    step = np.asarray(half_width) / stats.target_std / 3
    parameters = dict(model.parameters)
    for head in ("mean", "median", "increments"):
        parameters[f"head.{head}.weight"] = np.zeros_like(parameters[f"head.{head}.weight"])
    parameters["head.mean.bias"] = stats.standardize_targets(center)
    parameters["head.median.bias"] = stats.standardize_targets(center)
    parameters["head.increments.bias"] = np.repeat(np.log(np.expm1(step)), 6)
    return model.with_parameters(parameters)


class TestSlidingDetector(unittest.TestCase):
    def setUp(self):
        self.series = synthetic_series(hours=60)
        self.model = init(CONFIG, 2, stats=compute_stats(self.series))

    def test_one_record_per_hour(self):
        records = run_sliding(self.model, self.series)

        self.assertEqual([record.hour for record in records], self.series.hours.tolist())
        self.assertEqual([record.scored for record in records], [False] * 8 + [True] * 52)
        for record in records[:8]:
            self.assertEqual(record.score, 0.0)
            self.assertFalse(record.anomalous)
            self.assertEqual(record.verdicts, ())

    def test_verdicts_follow_the_band(self):
        for record in run_sliding(self.model, self.series)[8:]:
            self.assertEqual(len(record.verdicts), 5)
            for verdict in record.verdicts:
                outside = verdict.observed < verdict.lower or verdict.observed > verdict.upper
                self.assertEqual(verdict.violated, outside)
                self.assertEqual(verdict.deviation > 0, outside)
            expected = sum(
                verdict.deviation / mean
                for verdict, mean in zip(record.verdicts, self.model.stats.mean_frequencies)
            )
            self.assertAlmostEqual(record.score, expected, places=12)

    def test_uniform_weights(self):
        config = DetectorConfig(window=8, weights="uniform")
        for record in SlidingDetector(self.model, config).run(self.series)[8:]:
            self.assertAlmostEqual(
                record.score, sum(verdict.deviation for verdict in record.verdicts), places=12
            )

    def test_batch_size_does_not_matter(self):
        small = SlidingDetector(self.model, DetectorConfig(window=8, batch_size=3))
        large = SlidingDetector(self.model, DetectorConfig(window=8, batch_size=500))
        for a, b in zip(small.run(self.series), large.run(self.series)):
            self.assertEqual(a.hour, b.hour)
            self.assertEqual(a.anomalous, b.anomalous)
            self.assertAlmostEqual(a.score, b.score, places=10)

    def test_score_by_hand(self):
        detector = SlidingDetector(self.model)
        quantiles = np.tile(np.linspace(0.9, 1.1, 7), (1, 5, 1))
        observed = np.array([[1.3, 1.0, 0.6, 1.1, 0.9]])

        lower, upper, violated, deviations, scores = detector.score(observed, quantiles)

        np.testing.assert_allclose(lower, [[0.9] * 5])
        np.testing.assert_allclose(upper, [[1.1] * 5])
        self.assertEqual(violated.tolist(), [[True, False, True, False, False]])
        np.testing.assert_allclose(deviations, [[0.2, 0.0, 0.3, 0.0, 0.0]], atol=1e-12)
        means = self.model.stats.mean_frequencies
        self.assertAlmostEqual(scores[0], 0.2 / means[0] + 0.3 / means[2], places=12)

    def test_gaps_leave_hours_unscored(self):
        keep = np.r_[0:30, 33:60]
        series = Series(
            self.series.hours[keep], self.series.targets[keep], self.series.covariates[keep]
        )
        records = run_sliding(self.model, series)

        self.assertEqual(len(records), 60)
        scored = [record.scored for record in records]
        self.assertEqual(scored[30:41], [False] * 11)
        self.assertTrue(scored[29])
        self.assertTrue(scored[41])

    def test_series_too_short(self):
        with self.assertRaises(SeriesTooShort):
            run_sliding(self.model, self.series.between(None, from_epoch_hour(START_HOUR + 8)))

    def test_window_mismatch(self):
        with self.assertRaises(WindowMismatch):
            SlidingDetector(self.model, DetectorConfig(window=12))

    def test_a_spike_is_flagged_where_it_happens(self):
        scenario = Scenario(
            hours=60,
            couplings=[0.0] * 5,
            events=[
                {
                    "id": "spike",
                    "kind": "spike",
                    "start": 30,
                    "duration": 1,
                    "magnitude": 5.0,
                    "channels": [2],
                }
            ],
        )
        baselines = np.array(scenario.baselines)
        targets, _ = inject(scenario, np.tile(baselines, (60, 1)))
        noise = np.array(scenario.noise)
        model = banded_model(self.model, baselines, 2 * noise)

        records = run_sliding(model, make_series(targets))
        flagged = [record for record in records if record.anomalous]

        self.assertEqual([record.hour for record in flagged], [START_HOUR + 30])
        self.assertEqual(flagged[0].violated_channels, ("f2",))
        self.assertAlmostEqual(flagged[0].verdicts[1].deviation, 3 * noise[1], places=9)
        self.assertEqual(sum(record.scored for record in records), 52)
