import math
import unittest

import numpy as np

from src.modalwatch.anomaly import (
    AnomalyRecord,
    ChannelVerdict,
    parse_report,
    plot_data,
    run_sliding,
    to_report_csv,
)
from src.modalwatch.anomaly.reports import PLOT_COLUMNS, REPORT_COLUMNS, intensity, read_plot_data
from src.modalwatch.exceptions import MalformedRow
from src.modalwatch.forecaster import ModelConfig, init
from src.modalwatch.timeseries import TARGET_CHANNELS, compute_stats
from tests.utils import START_HOUR, synthetic_series


def record(hour, score, violated=()):
    verdicts = [
        ChannelVerdict(
            channel,
            1.0,
            0.9,
            1.1,
            channel in violated,
            0.01 if channel in violated else 0.0,
        )
        for channel in TARGET_CHANNELS
    ]
    return AnomalyRecord(hour, verdicts, score)


class TestReportCsv(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        series = synthetic_series(hours=40)
        config = ModelConfig(
            window=8, hidden=8, heads=1, hour_embedding=2, day_embedding=2, month_embedding=2
        )
        cls.records = run_sliding(init(config, 1, stats=compute_stats(series)), series)

    def test_layout(self):
        lines = to_report_csv(self.records).splitlines()

        self.assertEqual(lines[0], ",".join(REPORT_COLUMNS))
        self.assertEqual(len(lines), 41)
        self.assertEqual(lines[1], "2016-01-01T00:00:00Z,0,0.0" + "," * 20 + ",0")
        self.assertTrue(lines[9].startswith("2016-01-01T08:00:00Z,"))
        self.assertTrue(lines[9].endswith(",1"))

    def test_reads_back(self):
        parsed = parse_report(to_report_csv(self.records))

        self.assertEqual(len(parsed), len(self.records))
        for original, restored in zip(self.records, parsed):
            self.assertEqual(restored.hour, original.hour)
            self.assertEqual(restored.scored, original.scored)
            self.assertEqual(restored.anomalous, original.anomalous)
            self.assertAlmostEqual(restored.score, original.score, places=12)
            for a, b in zip(original.verdicts, restored.verdicts):
                np.testing.assert_allclose(
                    (a.lower, a.upper, a.deviation), (b.lower, b.upper, b.deviation), rtol=1e-12
                )
                self.assertTrue(math.isnan(b.observed))

    def test_empty_report(self):
        self.assertEqual(parse_report(""), [])
        self.assertEqual(parse_report(to_report_csv([])), [])

    def test_wrong_header(self):
        with self.assertRaises(MalformedRow):
            parse_report("timestamp,anomalous\n2016-01-01T00:00:00Z,0\n")

    def test_unreadable_row(self):
        text = to_report_csv([record(START_HOUR, 0.5, violated=("f1",))])
        with self.assertRaises(MalformedRow) as raised:
            parse_report(text.replace("0.5", "lots"))
        self.assertEqual(raised.exception.line, 2)


class TestIntensity(unittest.TestCase):
    def test_min_max_over_anomalous_records(self):
        records = [
            record(START_HOUR, 0.0),
            record(START_HOUR + 1, 0.2, violated=("f1",)),
            record(START_HOUR + 2, 0.6, violated=("f2",)),
            record(START_HOUR + 3, 0.4, violated=("f1", "f3")),
        ]
        values = intensity(records)

        self.assertTrue(math.isnan(values[0]))
        np.testing.assert_allclose(values[1:], [0.0, 1.0, 0.5])

    def test_equal_scores(self):
        records = [record(START_HOUR + i, 0.3, violated=("f4",)) for i in range(3)]
        np.testing.assert_array_equal(intensity(records), [1.0, 1.0, 1.0])

    def test_nothing_anomalous(self):
        self.assertTrue(np.all(np.isnan(intensity([record(START_HOUR, 0.0)]))))


class TestPlotData(unittest.TestCase):
    def test_one_file_per_channel(self):
        series = synthetic_series(hours=30)
        config = ModelConfig(
            window=8, hidden=8, heads=1, hour_embedding=2, day_embedding=2, month_embedding=2
        )
        records = run_sliding(init(config, 1, stats=compute_stats(series)), series)
        files = plot_data(records)

        self.assertEqual(sorted(files), [f"plot_{channel}.csv" for channel in TARGET_CHANNELS])
        frame = read_plot_data(files["plot_f3.csv"])
        self.assertEqual(tuple(frame.columns[: len(PLOT_COLUMNS)]), PLOT_COLUMNS)
        self.assertEqual(len(frame), 30)
        self.assertEqual(frame["hour"].tolist(), series.hours.tolist())
        self.assertTrue(frame["mean"][:8].isna().all())
        self.assertFalse(frame["mean"][8:].isna().any())
        np.testing.assert_allclose(frame["observed"], series.channel("f3"))
        self.assertTrue(np.all(frame["p01"][8:] <= frame["p99"][8:]))
