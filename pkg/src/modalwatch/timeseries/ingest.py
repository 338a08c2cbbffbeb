"""Reading and writing the canonical monitoring CSV."""

import io
import logging
import math
import re

import numpy as np
import pandas
import pendulum

from ..exceptions import (
    DuplicateTimestamp,
    InvalidSample,
    MalformedRow,
    NonHourlyTimestamp,
    UnknownColumn,
)
from .calendar import format_epoch_hour, to_epoch_hour
from .channels import COVARIATE_CHANNELS, CSV_COLUMNS, N_TARGETS, TARGET_CHANNELS
from .MonitoringSample import validate_values
from .Series import Series

logger = logging.getLogger("modalwatch.timeseries.ingest")


def parse_timestamp(value, line=None):
    try:
        timestamp = pendulum.parse(value)
    except Exception:
        raise MalformedRow(f"cannot parse timestamp '{value}'", line=line)

    if not isinstance(timestamp, pendulum.DateTime) or "T" not in value:
        raise MalformedRow(f"'{value}' is not an ISO-8601 date-time", line=line)
    if timestamp.utcoffset() is None or timestamp.utcoffset().total_seconds() != 0:
        raise MalformedRow(f"timestamp '{value}' is not UTC", line=line)
    if timestamp.minute or timestamp.second or timestamp.microsecond:
        raise NonHourlyTimestamp(f"timestamp '{value}' is not on the hour", line=line)
    return timestamp


def _parse_number(name, cell, line):
    if cell == "":
        return math.nan
    try:
        value = float(cell)
    except ValueError:
        raise MalformedRow(f"column {name}: '{cell}' is not a number", line=line)
    if not math.isfinite(value):
        raise MalformedRow(f"column {name}: '{cell}' is not finite", line=line)
    return value


def _read_frame(text):
    try:
        return pandas.read_csv(
            io.StringIO(text), dtype=str, keep_default_na=False, skip_blank_lines=True
        )
    except pandas.errors.EmptyDataError:
        raise MalformedRow("input is empty, a header row is required", line=1)
    except pandas.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        raise MalformedRow(str(e), line=int(match.group(1)) if match else None)


def _check_header(columns):
    unknown = [column for column in columns if column not in CSV_COLUMNS]
    if unknown:
        raise UnknownColumn(f"unknown column(s) {', '.join(unknown)}", line=1)
    if tuple(columns) != CSV_COLUMNS:
        raise MalformedRow(f"header must be {','.join(CSV_COLUMNS)}", line=1)


def parse_csv(text, provenance=""):
    """Parses the canonical monitoring CSV into a Series sorted by timestamp.

    Arguments:
        text {string|file-like|bytes} -- The CSV content, UTF-8, LF or CRLF.

    Keyword Arguments:
        provenance {string} -- Free text describing where the data comes from.

    Raises:
        MalformedRow: for any row that cannot be parsed (line number reported).
        UnknownColumn: when the header contains a column outside the canonical list.
        DuplicateTimestamp: when two rows share a timestamp.
        NonHourlyTimestamp: when minutes or seconds are not zero.

    Returns:
        Series
    """
    if hasattr(text, "read"):
        text = text.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    text = text.lstrip("\ufeff")

    # mangled duplicates (f1.1) would be reported as unknown; check the raw header
    header = text.splitlines()[0].strip().split(",") if text.strip() else []
    if header:
        _check_header(header)

    frame = _read_frame(text)
    _check_header(list(frame.columns))

    hours, targets, covariates = [], [], []
    seen = {}
    for position, row in enumerate(frame.itertuples(index=False, name=None)):
        line = position + 2
        if any(not isinstance(cell, str) for cell in row):
            raise MalformedRow(f"expected {len(CSV_COLUMNS)} fields", line=line)

        timestamp = parse_timestamp(row[0].strip(), line=line)
        hour = to_epoch_hour(timestamp)
        if hour in seen:
            raise DuplicateTimestamp(
                f"timestamp {row[0]} already seen on line {seen[hour]}", line=line
            )
        seen[hour] = line

        values = [
            _parse_number(name, cell.strip(), line)
            for name, cell in zip(CSV_COLUMNS[1:], row[1:])
        ]
        try:
            validate_values(values[:N_TARGETS], values[N_TARGETS:])
        except InvalidSample as e:
            raise MalformedRow(str(e), line=line)

        hours.append(hour)
        targets.append(values[:N_TARGETS])
        covariates.append(values[N_TARGETS:])

    order = np.argsort(np.array(hours, dtype=np.int64), kind="stable")
    series = Series(
        np.array(hours, dtype=np.int64)[order],
        np.array(targets, dtype=np.float64).reshape(-1, N_TARGETS)[order],
        np.array(covariates, dtype=np.float64).reshape(-1, len(COVARIATE_CHANNELS))[order],
        provenance=provenance,
    )
    logger.info(
        f"Parsed {len(series)} samples",
        extra={"samples": len(series), "provenance": provenance},
    )
    return series


def series_frame(series):
    """The canonical CSV columns of a series as a DataFrame (NaN for missing)."""
    frame = pandas.DataFrame(
        np.concatenate([series.targets, series.covariates], axis=1),
        columns=list(TARGET_CHANNELS + COVARIATE_CHANNELS),
    )
    frame.insert(0, "timestamp", [format_epoch_hour(hour) for hour in series.hours])
    return frame


def to_csv(series):
    """Serializes a series to the canonical CSV. Missing values are empty cells and
    floats use their shortest round-trip representation."""
    buffer = io.StringIO()
    series_frame(series).to_csv(buffer, index=False, na_rep="", lineterminator="\n")
    return buffer.getvalue()
