from ..timeseries.calendar import format_epoch_hour


class AnomalyRecord:
    """Outcome of the detector at one hour of the timeline.

    A scored record holds one ChannelVerdict per target channel and the forecast it
    was checked against. An unscored record marks an hour without a complete
    preceding window or without an observed label; it has no verdicts and a zero
    score.
    """

    __slots__ = ("hour", "verdicts", "score", "forecast", "observed")

    def __init__(self, hour, verdicts=(), score=0.0, forecast=None, observed=None):
        object.__setattr__(self, "hour", int(hour))
        object.__setattr__(self, "verdicts", tuple(verdicts))
        object.__setattr__(self, "score", float(score))
        object.__setattr__(self, "forecast", forecast)
        object.__setattr__(self, "observed", None if observed is None else tuple(observed))

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @classmethod
    def unscored(cls, hour, observed=None):
        return cls(hour, observed=observed)

    @property
    def scored(self):
        return bool(self.verdicts)

    @property
    def anomalous(self):
        return any(verdict.violated for verdict in self.verdicts)

    @property
    def timestamp(self):
        return format_epoch_hour(self.hour)

    @property
    def violated_channels(self):
        return tuple(v.channel for v in self.verdicts if v.violated)

    def __eq__(self, other):
        if not isinstance(other, AnomalyRecord):
            return NotImplemented
        return (
            self.hour == other.hour
            and self.verdicts == other.verdicts
            and self.score == other.score
        )

    def __repr__(self):
        if not self.scored:
            return f"<AnomalyRecord {self.timestamp} unscored>"
        return f"<AnomalyRecord {self.timestamp} anomalous={self.anomalous} score={self.score}>"
