"""Anomaly report and plot-data files."""

import io
import math

import numpy as np
import pandas

from ..exceptions import MalformedRow
from ..timeseries.calendar import to_epoch_hour
from ..timeseries.channels import TARGET_CHANNELS
from ..timeseries.ingest import parse_timestamp
from .AnomalyRecord import AnomalyRecord
from .ChannelVerdict import ChannelVerdict

N_CHANNELS = len(TARGET_CHANNELS)

REPORT_COLUMNS = (
    ("timestamp", "anomalous", "score")
    + tuple(
        name
        for c in range(1, N_CHANNELS + 1)
        for name in (f"ch{c}_viol", f"ch{c}_dev")
    )
    + tuple(
        name
        for c in range(1, N_CHANNELS + 1)
        for name in (f"lower{c}", f"upper{c}")
    )
    + ("scored",)
)

PLOT_COLUMNS = ("timestamp", "observed", "mean", "p01", "p99", "violated", "intensity")


def _write(frame):
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, na_rep="", lineterminator="\n")
    return buffer.getvalue()


def report_frame(records):
    rows = []
    for record in records:
        row = {
            "timestamp": record.timestamp,
            "anomalous": int(record.anomalous),
            "score": record.score,
            "scored": int(record.scored),
        }
        for c, verdict in enumerate(record.verdicts, start=1):
            row[f"ch{c}_viol"] = int(verdict.violated)
            row[f"ch{c}_dev"] = verdict.deviation
            row[f"lower{c}"] = verdict.lower
            row[f"upper{c}"] = verdict.upper
        rows.append(row)
    frame = pandas.DataFrame(rows, columns=list(REPORT_COLUMNS))
    for c in range(1, N_CHANNELS + 1):
        frame[f"ch{c}_viol"] = frame[f"ch{c}_viol"].astype("Int64")
    return frame


def to_report_csv(records):
    """The anomaly report, one row per hour. Unscored rows leave the per-channel
    cells empty and carry scored=0."""
    return _write(report_frame(records))


def parse_report(text):
    """Reads an anomaly report back into records. The observed values are not part
    of the report and come back as NaN.

    Raises:
        MalformedRow: on a wrong header or an unreadable row.
    """
    if hasattr(text, "read"):
        text = text.read()
    if not text.strip():
        return []
    frame = pandas.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    if tuple(frame.columns) != REPORT_COLUMNS:
        raise MalformedRow(f"report header must be {','.join(REPORT_COLUMNS)}", line=1)

    records = []
    for position, row in enumerate(frame.to_dict("records")):
        line = position + 2
        try:
            hour = to_epoch_hour(parse_timestamp(row["timestamp"], line=line))
            if row["scored"] != "1":
                records.append(AnomalyRecord.unscored(hour))
                continue
            verdicts = [
                ChannelVerdict(
                    channel,
                    math.nan,
                    float(row[f"lower{c}"]),
                    float(row[f"upper{c}"]),
                    row[f"ch{c}_viol"] == "1",
                    float(row[f"ch{c}_dev"]),
                )
                for c, channel in enumerate(TARGET_CHANNELS, start=1)
            ]
            records.append(AnomalyRecord(hour, verdicts, float(row["score"])))
        except ValueError as e:
            raise MalformedRow(str(e), line=line)
    return records


def intensity(records):
    """Min-max normalized score of every anomalous record over the given period,
    NaN elsewhere. A period whose anomalous scores are all equal maps them to 1.
    Presentation only."""
    scores = np.array([record.score for record in records], dtype=np.float64)
    anomalous = np.array([record.anomalous for record in records], dtype=bool)
    values = np.full(len(records), np.nan)
    if not anomalous.any():
        return values
    low, high = scores[anomalous].min(), scores[anomalous].max()
    if high > low:
        values[anomalous] = (scores[anomalous] - low) / (high - low)
    else:
        values[anomalous] = 1.0
    return values


def plot_frame(records, channel):
    """Observed value, forecast mean and the outer 1%/99% quantiles of one channel,
    hour by hour; forecast cells are empty on unscored hours."""
    c = TARGET_CHANNELS.index(channel)
    rows = []
    for record, shade in zip(records, intensity(records)):
        observed = math.nan if record.observed is None else record.observed[c]
        row = {"timestamp": record.timestamp, "observed": observed, "intensity": shade}
        if record.forecast is not None:
            row["mean"] = record.forecast.mean[c]
            row["p01"] = record.forecast.quantile(0.01)[c]
            row["p99"] = record.forecast.quantile(0.99)[c]
        if record.scored:
            row["violated"] = int(record.verdicts[c].violated)
        rows.append(row)
    frame = pandas.DataFrame(rows, columns=list(PLOT_COLUMNS))
    frame["violated"] = frame["violated"].astype("Int64")
    return frame


def plot_data(records):
    """CSV text of the plot data, keyed by file name."""
    return {
        f"plot_{channel}.csv": _write(plot_frame(records, channel))
        for channel in TARGET_CHANNELS
    }


def read_plot_data(text):
    """Parses a plot-data CSV into a DataFrame with epoch hours in 'hour'."""
    frame = pandas.read_csv(io.StringIO(text))
    frame["hour"] = [to_epoch_hour(parse_timestamp(value)) for value in frame["timestamp"]]
    return frame
