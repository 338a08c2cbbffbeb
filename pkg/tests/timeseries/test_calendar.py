import unittest

import pendulum

from src.modalwatch.timeseries import fingerprint
from src.modalwatch.timeseries.calendar import (
    fingerprints,
    format_epoch_hour,
    from_epoch_hour,
    to_epoch_hour,
)


class TestFingerprint(unittest.TestCase):
    def test_mapping(self):
        self.assertEqual(fingerprint(pendulum.datetime(2016, 8, 24, 3)), (4, 24, 8))
        self.assertEqual(fingerprint(pendulum.datetime(2016, 12, 31, 23)), (24, 31, 12))
        self.assertEqual(fingerprint(pendulum.datetime(2016, 1, 1, 0)), (1, 1, 1))

    def test_vectorized_fingerprints_agree(self):
        start = to_epoch_hour(pendulum.datetime(2016, 2, 27))
        hours = list(range(start, start + 24 * 40))
        expected = [list(fingerprint(from_epoch_hour(hour))) for hour in hours]
        self.assertEqual(fingerprints(hours).tolist(), expected)

    def test_epoch_hours(self):
        self.assertEqual(to_epoch_hour(pendulum.datetime(1970, 1, 1, 5)), 5)
        self.assertEqual(format_epoch_hour(5), "1970-01-01T05:00:00Z")
