import io

import numpy as np
import pandas

from ..exceptions import MalformedRow
from ..timeseries.calendar import format_epoch_hour, to_epoch_hour
from ..timeseries.ingest import parse_timestamp

COLUMNS = ("timestamp", "is_anomaly", "event_id")

SEPARATOR = ";"


class Labels:
    """Hour-by-hour ground truth of a synthetic dataset. event_ids holds the label
    of every event active at the hour, joined by ';', or '' on clean hours."""

    def __init__(self, hours, event_ids):
        self.hours = np.array(hours, dtype=np.int64).reshape(-1)
        self.event_ids = [str(value) for value in event_ids]
        if len(self.event_ids) != len(self.hours):
            raise ValueError("One event id entry is required per hour.")
        self.is_anomaly = np.array([bool(value) for value in self.event_ids], dtype=bool)

    def __len__(self):
        return len(self.hours)

    def spans(self):
        """Every labeled event as {event id: (first hour, last hour + 1)}, ordered
        by first hour."""
        spans = {}
        for hour, value in zip(self.hours, self.event_ids):
            for event_id in filter(None, value.split(SEPARATOR)):
                first, stop = spans.get(event_id, (int(hour), int(hour) + 1))
                spans[event_id] = (min(first, int(hour)), max(stop, int(hour) + 1))
        return dict(sorted(spans.items(), key=lambda item: (item[1][0], item[0])))

    def frame(self):
        return pandas.DataFrame(
            {
                "timestamp": [format_epoch_hour(hour) for hour in self.hours],
                "is_anomaly": self.is_anomaly.astype(int),
                "event_id": self.event_ids,
            },
            columns=list(COLUMNS),
        )

    def to_csv(self):
        buffer = io.StringIO()
        self.frame().to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()

    @classmethod
    def parse(cls, text):
        """Reads a labels CSV.

        Raises:
            MalformedRow: on a wrong header or an unreadable row.
        """
        if hasattr(text, "read"):
            text = text.read()
        if not text.strip():
            raise MalformedRow("labels file is empty, a header row is required", line=1)
        frame = pandas.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
        if tuple(frame.columns) != COLUMNS:
            raise MalformedRow(f"labels header must be {','.join(COLUMNS)}", line=1)

        hours, event_ids = [], []
        for position, (timestamp, flag, event_id) in enumerate(
            frame.itertuples(index=False, name=None)
        ):
            line = position + 2
            if flag not in ("0", "1") or (flag == "1") != bool(event_id):
                raise MalformedRow(
                    "is_anomaly must be 1 exactly when an event id is given", line=line
                )
            hours.append(to_epoch_hour(parse_timestamp(timestamp, line=line)))
            event_ids.append(event_id)
        return cls(hours, event_ids)

    def __eq__(self, other):
        if not isinstance(other, Labels):
            return NotImplemented
        return np.array_equal(self.hours, other.hours) and self.event_ids == other.event_ids

    def __repr__(self):
        return f"<Labels hours={len(self)} events={len(self.spans())}>"
