import numpy as np

from ..timeseries.calendar import format_epoch_hour
from ..timeseries.channels import TARGET_CHANNELS


class Episode:
    """A run of consecutive anomalous hours."""

    def __init__(self, records, divisors):
        self.records = list(records)
        self.start_hour = self.records[0].hour
        self.end_hour = self.records[-1].hour + 1
        scores = [record.score for record in self.records]
        peak = int(np.argmax(scores))
        self.peak_score = scores[peak]
        self.peak_hour = self.records[peak].hour

        deviations = np.array(
            [[verdict.deviation for verdict in record.verdicts] for record in self.records]
        )
        self.contributions = (deviations / np.asarray(divisors, dtype=np.float64)).sum(axis=0)
        self.dominant_channel = TARGET_CHANNELS[int(np.argmax(self.contributions))]
        self.channels = tuple(
            channel
            for c, channel in enumerate(TARGET_CHANNELS)
            if any(record.verdicts[c].violated for record in self.records)
        )

    @property
    def hours(self):
        return self.end_hour - self.start_hour

    def serialize(self):
        return {
            "start": format_epoch_hour(self.start_hour),
            "end": format_epoch_hour(self.end_hour),
            "hours": self.hours,
            "peak": format_epoch_hour(self.peak_hour),
            "peak_score": self.peak_score,
            "dominant_channel": self.dominant_channel,
            "channels": " ".join(self.channels),
        }

    def __repr__(self):
        return (
            f"<Episode {format_epoch_hour(self.start_hour)} +{self.hours}h "
            f"dominant={self.dominant_channel}>"
        )


def find_episodes(records, divisors):
    """Merges consecutive anomalous hours into episodes.

    Arguments:
        records {list} -- AnomalyRecord ordered by time.
        divisors {sequence} -- Per-channel deviation divisors used to rank the
            channels, the training mean frequencies for inverse weighting.

    Returns:
        list -- of Episode, ordered by start.
    """
    episodes, current = [], []
    for record in records:
        if record.anomalous and (not current or record.hour == current[-1].hour + 1):
            current.append(record)
            continue
        if current:
            episodes.append(Episode(current, divisors))
        current = [record] if record.anomalous else []
    if current:
        episodes.append(Episode(current, divisors))
    return episodes
