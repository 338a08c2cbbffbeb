import math
import unittest

from src.modalwatch.exceptions import (
    DuplicateTimestamp,
    MalformedRow,
    NonHourlyTimestamp,
    UnknownColumn,
)
from src.modalwatch.timeseries import parse_csv, to_csv
from tests.utils import HEADER, START_HOUR, row, synthetic_series


class TestParseCsv(unittest.TestCase):
    def test_single_row(self):
        series = parse_csv("\n".join([HEADER, row("2016-01-01T00:00:00Z")]) + "\n")

        self.assertEqual(len(series), 1)
        self.assertEqual(series.hours[0], START_HOUR)
        self.assertTrue(series.mask.all())
        self.assertEqual(series.targets[0].tolist(), [1.0, 1.1, 3.3, 4.1, 5.9])

    def test_rows_are_sorted_by_timestamp(self):
        text = "\n".join(
            [HEADER, row("2016-01-01T02:00:00Z"), row("2016-01-01T00:00:00Z"), row("2016-01-01T01:00:00Z")]
        )
        series = parse_csv(text)
        self.assertEqual(series.hours.tolist(), [START_HOUR, START_HOUR + 1, START_HOUR + 2])

    def test_empty_cell_is_missing(self):
        covariates = [15.0, None, 70.0, 3.0, 4.5, 90.0]
        series = parse_csv("\n".join([HEADER, row("2016-01-01T00:00:00Z", covariates=covariates)]))

        self.assertTrue(math.isnan(series.channel("rain_mm")[0]))
        self.assertFalse(series.mask[0, 6])
        self.assertIsNone(series[0].covariates[1])

    def test_crlf_and_byte_order_mark(self):
        text = "\ufeff" + "\r\n".join([HEADER, row("2016-01-01T00:00:00Z")]) + "\r\n"
        self.assertEqual(len(parse_csv(text)), 1)

    def test_duplicate_timestamp(self):
        text = "\n".join([HEADER, row("2016-01-01T00:00:00Z"), row("2016-01-01T00:00:00Z")])
        with self.assertRaises(DuplicateTimestamp) as context:
            parse_csv(text)
        self.assertEqual(context.exception.line, 3)

    def test_non_hourly_timestamp(self):
        with self.assertRaises(NonHourlyTimestamp):
            parse_csv("\n".join([HEADER, row("2016-01-01T00:30:00Z")]))

    def test_non_utc_timestamp(self):
        with self.assertRaises(MalformedRow):
            parse_csv("\n".join([HEADER, row("2016-01-01T00:00:00+01:00")]))

    def test_unknown_column(self):
        with self.assertRaises(UnknownColumn) as context:
            parse_csv(HEADER + ",pressure_hpa\n")
        self.assertEqual(context.exception.line, 1)

    def test_bad_number_reports_line(self):
        bad = row("2016-01-01T01:00:00Z").replace("1.1", "abc", 1)
        text = "\n".join([HEADER, row("2016-01-01T00:00:00Z"), bad])
        with self.assertRaises(MalformedRow) as context:
            parse_csv(text)
        self.assertEqual(context.exception.line, 3)

    def test_out_of_range_humidity(self):
        covariates = [15.0, 0.0, 120.0, 3.0, 4.5, 90.0]
        with self.assertRaises(MalformedRow):
            parse_csv("\n".join([HEADER, row("2016-01-01T00:00:00Z", covariates=covariates)]))

    def test_empty_input(self):
        with self.assertRaises(MalformedRow) as context:
            parse_csv("")
        self.assertEqual(context.exception.line, 1)

    def test_written_csv_parses_back_to_the_same_series(self):
        series = synthetic_series(hours=48)
        self.assertEqual(parse_csv(to_csv(series)), series)

    def test_writer_leaves_missing_cells_empty(self):
        covariates = [15.0, None, 70.0, 3.0, 4.5, 90.0]
        text = "\n".join([HEADER, row("2016-01-01T00:00:00Z", covariates=covariates)]) + "\n"
        lines = to_csv(parse_csv(text)).splitlines()
        self.assertEqual(lines[0], HEADER)
        self.assertEqual(lines[1].split(",")[7], "")
