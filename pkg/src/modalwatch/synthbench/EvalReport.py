import json

from ..timeseries.calendar import format_epoch_hour


class EventOutcome:
    """Whether one labeled event was detected, and through which channels."""

    def __init__(
        self, event_id, start_hour, stop_hour, hit, channels=(), first_hour=None, peak_hour=None
    ):
        self.event_id = event_id
        self.start_hour = start_hour
        self.stop_hour = stop_hour
        self.hit = hit
        self.channels = tuple(channels)
        self.first_hour = first_hour
        self.peak_hour = peak_hour

    def serialize(self):
        return {
            "event_id": self.event_id,
            "start": format_epoch_hour(self.start_hour),
            "end": format_epoch_hour(self.stop_hour),
            "hit": self.hit,
            "channels": list(self.channels),
            "first_detection": None
            if self.first_hour is None
            else format_epoch_hour(self.first_hour),
            "peak_detection": None
            if self.peak_hour is None
            else format_epoch_hour(self.peak_hour),
        }

    def __repr__(self):
        return f"<EventOutcome {self.event_id} {'hit' if self.hit else 'miss'}>"


class EvalReport:
    """Detection quality against ground truth at one score threshold."""

    def __init__(
        self,
        precision,
        recall,
        f1,
        false_positive_rate,
        tolerance,
        threshold,
        events=(),
        flags=0,
        true_flags=0,
        clean_hours=0,
        notes=(),
        sweep=None,
    ):
        self.precision = precision
        self.recall = recall
        self.f1 = f1
        self.false_positive_rate = false_positive_rate
        self.tolerance = tolerance
        self.threshold = threshold
        self.events = list(events)
        self.flags = flags
        self.true_flags = true_flags
        self.clean_hours = clean_hours
        self.notes = list(notes)
        self.sweep = sweep

    @property
    def hits(self):
        return sum(1 for event in self.events if event.hit)

    @property
    def misses(self):
        return [event for event in self.events if not event.hit]

    def outcome(self, event_id):
        for event in self.events:
            if event.event_id == event_id:
                return event
        raise KeyError(event_id)

    def with_sweep(self, sweep):
        return self.__class__(
            self.precision,
            self.recall,
            self.f1,
            self.false_positive_rate,
            self.tolerance,
            self.threshold,
            self.events,
            self.flags,
            self.true_flags,
            self.clean_hours,
            self.notes,
            sweep,
        )

    def serialize(self):
        data = {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "false_positive_rate": self.false_positive_rate,
            "tolerance_hours": self.tolerance,
            "threshold": self.threshold,
            "flags": self.flags,
            "true_flags": self.true_flags,
            "clean_hours": self.clean_hours,
            "events": [event.serialize() for event in self.events],
            "notes": self.notes,
        }
        if self.sweep is not None:
            data["sweep"] = self.sweep
        return data

    def to_json(self):
        return json.dumps(self.serialize(), sort_keys=True, indent=2) + "\n"

    def __repr__(self):
        return (
            f"<EvalReport precision={self.precision:.3f} recall={self.recall:.3f} "
            f"f1={self.f1:.3f} fpr={self.false_positive_rate:.4f}>"
        )
