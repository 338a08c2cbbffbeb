"""Calendar helpers: epoch-hour arithmetic and the temporal fingerprints the
forecaster is conditioned on."""

import numpy as np
import pendulum

SECONDS_PER_HOUR = 3600

HOURS_PER_DAY = 24
DAYS_PER_MONTH = 31
MONTHS_PER_YEAR = 12


def to_epoch_hour(timestamp):
    """Converts an hourly UTC instant to the number of hours since 1970-01-01T00Z."""
    return int(timestamp.int_timestamp // SECONDS_PER_HOUR)


def from_epoch_hour(hour):
    return pendulum.from_timestamp(int(hour) * SECONDS_PER_HOUR, tz="UTC")


def format_timestamp(timestamp):
    return timestamp.in_timezone("UTC").strftime("%Y-%m-%dT%H:%M:%SZ")


def format_epoch_hour(hour):
    return format_timestamp(from_epoch_hour(hour))


def fingerprint(timestamp):
    """Maps an hourly UTC instant to its (hour, day, month) indexes.

    The hour index is the hour of day plus one (00:00 -> 1, 23:00 -> 24); day and
    month are the calendar day of month (1-31) and month (1-12).

    Arguments:
        timestamp {pendulum.DateTime} -- An instant on the hourly grid.

    Returns:
        tuple -- (hour index, day index, month index)
    """
    timestamp = pendulum.instance(timestamp).in_timezone("UTC")
    return (timestamp.hour + 1, timestamp.day, timestamp.month)


def fingerprints(hours):
    """Vectorized fingerprint over an array of epoch hours. Returns an (N, 3) int
    array with the same mapping as fingerprint()."""
    stamps = np.asarray(hours, dtype=np.int64).astype("datetime64[h]")
    days = stamps.astype("datetime64[D]")
    months = stamps.astype("datetime64[M]")
    hour_index = (stamps - days).astype(np.int64) + 1
    day_index = (days - months.astype("datetime64[D]")).astype(np.int64) + 1
    month_index = months.astype(np.int64) % MONTHS_PER_YEAR + 1
    return np.stack([hour_index, day_index, month_index], axis=-1)
