import unittest

import pytest

from src.modalwatch.anomaly import run_sliding
from src.modalwatch.collection import RecordCollection
from src.modalwatch.forecaster import ModelConfig, train
from src.modalwatch.synthbench import Scenario, alarm_threshold, evaluate, generate
from src.modalwatch.timeseries.calendar import to_epoch_hour
from src.modalwatch.timeseries.ingest import parse_timestamp

DETECTION_START = parse_timestamp("2016-08-19T00:00:00Z")
CALIBRATION_START = parse_timestamp("2016-06-20T00:00:00Z")


@pytest.mark.slow
class TestCaseStudy(unittest.TestCase):
    """Train on the clean year of the preset, set the threshold on its last two
    months, then look for the events that follow."""

    @classmethod
    def setUpClass(cls):
        series, cls.labels = generate(Scenario.load("scenarios/case_study.yaml"))
        config = ModelConfig(window=24, hidden=16, heads=2, max_epochs=20, seed=0)
        model = train(series.between(None, DETECTION_START), config)
        records = RecordCollection(run_sliding(model, series))

        calibration = records.where_between(
            "hour", to_epoch_hour(CALIBRATION_START), to_epoch_hour(DETECTION_START)
        )
        cls.threshold = alarm_threshold(calibration, 0.025)
        cls.report = evaluate(
            records.where("hour", ">=", to_epoch_hour(DETECTION_START)).all(),
            cls.labels,
            tolerance=2,
            threshold=cls.threshold,
            divisors=model.stats.mean_frequencies,
        )

    def test_events_are_found(self):
        self.assertEqual(len(self.report.events), 10)
        self.assertGreaterEqual(self.report.recall, 0.9)
        self.assertTrue(self.report.outcome("earthquake").hit)
        self.assertTrue(self.report.outcome("celebration").hit)

    def test_bells_show_on_the_second_mode_only(self):
        bells = [event for event in self.report.events if event.event_id.startswith("bells.")]

        self.assertEqual(len(bells), 8)
        for outcome in bells:
            if outcome.hit:
                self.assertEqual(outcome.channels, ("f2",), outcome.event_id)

    def test_false_alarms_stay_rare(self):
        self.assertGreater(self.threshold, 0.0)
        self.assertLessEqual(self.report.false_positive_rate, 0.05)
