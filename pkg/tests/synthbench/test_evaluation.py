import unittest

from src.modalwatch.anomaly import AnomalyRecord, ChannelVerdict
from src.modalwatch.exceptions import InsufficientData, InvalidConfiguration, TimelineMismatch
from src.modalwatch.synthbench import Labels, alarm_threshold, evaluate, sweep
from src.modalwatch.timeseries import TARGET_CHANNELS
from tests.utils import START_HOUR

HOURS = 1000
MEAN_FREQUENCIES = [1.05, 1.12, 3.32, 4.10, 5.85]


def labels(*events):
    """Labels over HOURS hours with events given as (id, first offset, duration)."""
    ids = [""] * HOURS
    for event_id, start, duration in events:
        for offset in range(start, start + duration):
            ids[offset] = event_id
    return Labels([START_HOUR + offset for offset in range(HOURS)], ids)


def records(flags=None):
    """One scored record per hour; flags maps an offset to (score, channels)."""
    flags = flags or {}
    made = []
    for offset in range(HOURS):
        score, channels = flags.get(offset, (0.0, ()))
        verdicts = [
            ChannelVerdict(channel, 1.0, 0.9, 1.1, channel in channels, 0.0)
            for channel in TARGET_CHANNELS
        ]
        made.append(AnomalyRecord(START_HOUR + offset, verdicts, score))
    return made


class TestEvaluate(unittest.TestCase):
    def test_perfect_detection(self):
        flags = {offset: (0.5, ("f1",)) for offset in range(100, 104)}
        report = evaluate(records(flags), labels(("quake", 100, 4)))

        self.assertEqual((report.precision, report.recall, report.f1), (1.0, 1.0, 1.0))
        self.assertEqual(report.false_positive_rate, 0.0)
        outcome = report.outcome("quake")
        self.assertTrue(outcome.hit)
        self.assertEqual(outcome.channels, ("f1",))
        self.assertEqual(outcome.first_hour, START_HOUR + 100)

    def test_nothing_flagged(self):
        report = evaluate(records(), labels(("quake", 100, 4)))

        self.assertEqual(report.recall, 0.0)
        self.assertEqual(report.precision, 1.0)
        self.assertEqual(report.f1, 0.0)
        self.assertEqual(len(report.notes), 1)
        self.assertEqual([event.event_id for event in report.misses], ["quake"])

    def test_empty_report(self):
        report = evaluate([], labels(("quake", 100, 4), ("drift", 500, 20)))

        self.assertEqual(report.recall, 0.0)
        self.assertEqual(report.precision, 1.0)
        self.assertIn("precision", report.notes[0])

    def test_false_positive_rate(self):
        report = evaluate(records({10: (0.1, ("f2",))}), labels())

        self.assertEqual(report.false_positive_rate, 1 / 1000)
        self.assertEqual(report.precision, 0.0)
        self.assertEqual(report.recall, 1.0)
        self.assertEqual(report.clean_hours, 1000)

    def test_tolerance(self):
        run = records({105: (0.2, ("f3",))})
        events = labels(("quake", 100, 4))

        self.assertTrue(evaluate(run, events, tolerance=2).outcome("quake").hit)
        report = evaluate(run, events, tolerance=1)
        self.assertFalse(report.outcome("quake").hit)
        self.assertEqual(report.flags - report.true_flags, 1)

    def test_threshold(self):
        run = records({100: (0.05, ("f1",)), 300: (0.5, ("f1",))})
        events = labels(("quake", 100, 4))

        self.assertEqual(evaluate(run, events).recall, 1.0)
        report = evaluate(run, events, threshold=0.1)
        self.assertEqual(report.recall, 0.0)
        self.assertEqual(report.flags, 1)

    def test_events_outside_the_period_are_ignored(self):
        report = evaluate(records()[:400], labels(("quake", 100, 4), ("drift", 500, 20)))
        self.assertEqual([event.event_id for event in report.events], ["quake"])

    def test_timeline_mismatch(self):
        run = [AnomalyRecord.unscored(START_HOUR + HOURS + 5)]
        with self.assertRaises(TimelineMismatch):
            evaluate(run, labels())

    def test_negative_tolerance(self):
        with self.assertRaises(InvalidConfiguration):
            evaluate(records(), labels(), tolerance=-1)

    def test_serialized_report(self):
        report = evaluate(records({100: (0.5, ("f1",))}), labels(("quake", 100, 4)))
        data = report.serialize()

        self.assertEqual(data["tolerance_hours"], 2)
        self.assertEqual(data["events"][0]["start"], "2016-01-05T04:00:00Z")
        self.assertEqual(data["events"][0]["end"], "2016-01-05T08:00:00Z")
        self.assertEqual(data["events"][0]["first_detection"], "2016-01-05T04:00:00Z")
        self.assertNotIn("sweep", data)

    def test_channels_come_from_the_peak_detection(self):
        run = records({100: (0.1, ("f1", "f4"))})
        run[101] = AnomalyRecord(
            START_HOUR + 101,
            [
                ChannelVerdict("f1", 1.05, 1.04, 1.06, False, 0.0),
                ChannelVerdict("f2", 1.13, 1.11, 1.126, True, 0.004),
                ChannelVerdict("f3", 3.32, 3.30, 3.34, False, 0.0),
                ChannelVerdict("f4", 4.13, 4.08, 4.127, True, 0.003),
                ChannelVerdict("f5", 5.85, 5.82, 5.88, False, 0.0),
            ],
            0.4,
        )
        events = labels(("bells", 100, 2))

        outcome = evaluate(run, events, divisors=MEAN_FREQUENCIES).outcome("bells")
        self.assertEqual(outcome.channels, ("f2",))
        self.assertEqual(outcome.first_hour, START_HOUR + 100)
        self.assertEqual(outcome.peak_hour, START_HOUR + 101)
        # unweighted, f4 is close enough to f2 to count
        self.assertEqual(evaluate(run, events).outcome("bells").channels, ("f2", "f4"))

    def test_missed_events_have_no_channels(self):
        outcome = evaluate(records(), labels(("quake", 100, 4))).outcome("quake")

        self.assertEqual(outcome.channels, ())
        self.assertIsNone(outcome.peak_hour)


class TestAlarmThreshold(unittest.TestCase):
    def setUp(self):
        self.run = records({offset: ((offset + 1) / 10, ("f3",)) for offset in range(10)})

    def test_keeps_the_allowed_share_of_flags(self):
        threshold = alarm_threshold(self.run, rate=0.0055)

        self.assertGreater(threshold, 0.5)
        self.assertLessEqual(threshold, 0.6)
        self.assertEqual(evaluate(self.run, labels(), threshold=threshold).flags, 5)

    def test_rare_flags_need_no_threshold(self):
        self.assertEqual(alarm_threshold(self.run, rate=0.02), 0.0)

    def test_invalid_rates(self):
        for rate in (0, 1.5, "0.1", True):
            with self.assertRaises(InvalidConfiguration):
                alarm_threshold(self.run, rate=rate)

    def test_nothing_scored(self):
        with self.assertRaises(InsufficientData):
            alarm_threshold([AnomalyRecord.unscored(START_HOUR)])


class TestSweep(unittest.TestCase):
    def test_recall_never_increases(self):
        flags = {
            100: (0.02, ("f1",)),
            300: (0.08, ("f2",)),
            500: (0.30, ("f3",)),
            700: (0.01, ("f4",)),
            900: (0.50, ("f5",)),
        }
        events = labels(("a", 100, 2), ("b", 300, 2), ("c", 500, 2), ("d", 600, 2))
        rows = sweep(records(flags), events)

        self.assertEqual(rows[0]["threshold"], 0.0)
        self.assertEqual(rows[0]["recall"], 0.75)
        recalls = [row["recall"] for row in rows]
        self.assertEqual(recalls, sorted(recalls, reverse=True))
        thresholds = [row["threshold"] for row in rows]
        self.assertEqual(thresholds, sorted(set(thresholds)))
        self.assertEqual(rows[-1]["threshold"], 0.5)

    def test_explicit_thresholds(self):
        run = records({100: (0.2, ("f1",))})
        rows = sweep(run, labels(("a", 100, 2)), thresholds=[0.3, 0.1])

        self.assertEqual([row["threshold"] for row in rows], [0.1, 0.3])
        self.assertEqual([row["recall"] for row in rows], [1.0, 0.0])
