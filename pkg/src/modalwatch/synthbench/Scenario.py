import datetime
import os

import pendulum
import yaml

from ..exceptions import ConfigurationNotFound, InvalidScenario, MalformedRow, OverlappingEvents
from ..timeseries.calendar import format_timestamp, to_epoch_hour
from ..timeseries.channels import N_TARGETS
from ..timeseries.ingest import parse_timestamp
from .AnomalyEvent import AnomalyEvent


def _timestamp(value):
    """Scenario timestamps come as ISO strings or, from unquoted YAML, as
    datetime objects (naive ones are UTC)."""
    if isinstance(value, datetime.datetime):
        value = pendulum.instance(value, tz="UTC")
        if value.minute or value.second or value.microsecond:
            raise InvalidScenario(f"Timestamp {value} is not on the hour.")
        return value
    try:
        return parse_timestamp(str(value))
    except MalformedRow as e:
        raise InvalidScenario(str(e))


class Scenario:
    """Recipe of a synthetic monitoring dataset.

    Frequencies follow baseline + coupling * temperature anomaly + Gaussian noise,
    per channel. The defaults below are declared values for a masonry tower of a
    few tens of metres, not measurements of any real structure.
    """

    defaults = {
        "name": "default",
        "start": "2016-01-01T00:00:00Z",
        "hours": 24 * 90,
        "seed": 0,
        "baselines": [1.05, 1.12, 3.32, 4.10, 5.85],
        "couplings": [0.0020, 0.0022, 0.0060, 0.0075, 0.0100],
        "noise": [0.0020, 0.0025, 0.0050, 0.0060, 0.0080],
        "temperature": {
            "mean": 15.0,
            "daily_amplitude": 4.0,
            "daily_peak_hour": 15,
            "seasonal_amplitude": 9.0,
            "seasonal_peak_day": 200,
            "noise": 1.0,
        },
        "weather": {
            "humidity_mean": 70.0,
            "humidity_per_degree": -2.5,
            "humidity_noise": 5.0,
            "rain_probability": 0.05,
            "rain_mean": 1.5,
            "wind_mean": 3.0,
            "gust_factor": 0.6,
            "direction_step": 15.0,
        },
        "events": [],
    }

    def __init__(self, **options):
        unknown = set(options) - set(self.defaults)
        if unknown:
            raise InvalidScenario(f"Unknown scenario field(s): {', '.join(sorted(unknown))}.")

        values = {**self.defaults, **options}
        for section in ("temperature", "weather"):
            extra = set(values[section] or {}) - set(self.defaults[section])
            if extra:
                raise InvalidScenario(f"Unknown {section} field(s): {', '.join(sorted(extra))}.")
            values[section] = {**self.defaults[section], **(values[section] or {})}

        start = _timestamp(values["start"])
        values["start"] = format_timestamp(start)
        values["events"] = tuple(self._event(event, start) for event in values["events"] or [])
        for key in ("baselines", "couplings", "noise"):
            values[key] = tuple(float(v) for v in values[key])

        for key, value in values.items():
            object.__setattr__(self, key, value)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Scenario is immutable")

    @staticmethod
    def _event(event, start):
        if isinstance(event, AnomalyEvent):
            return event
        event = dict(event)
        at = event.get("start")
        if isinstance(at, (str, datetime.datetime)):
            event["start"] = to_epoch_hour(_timestamp(at)) - to_epoch_hour(start)
        return AnomalyEvent(**event)

    def _validate(self):
        if not isinstance(self.hours, int) or self.hours < 2:
            raise InvalidScenario("A scenario lasts at least 2 hours.")
        if not isinstance(self.seed, int):
            raise InvalidScenario("The scenario seed must be an integer.")
        for key in ("baselines", "couplings", "noise"):
            if len(getattr(self, key)) != N_TARGETS:
                raise InvalidScenario(f"'{key}' needs one value per channel ({N_TARGETS}).")
        if any(not b > 0 for b in self.baselines):
            raise InvalidScenario("Baseline frequencies must be positive.")
        if any(not s >= 0 for s in self.noise):
            raise InvalidScenario("Noise levels must not be negative.")

        ids = [event.id for event in self.events]
        duplicated = sorted({i for i in ids if ids.count(i) > 1})
        if duplicated:
            raise InvalidScenario(f"Duplicated event id(s): {', '.join(duplicated)}.")

        for event in self.events:
            for label, start, stop in event.spans(self.hours):
                if stop > self.hours:
                    raise InvalidScenario(
                        f"Event {label} ends at hour {stop}, "
                        f"after the scenario ({self.hours} hours)."
                    )
        self._check_overlaps()

    def _check_overlaps(self):
        occupied = {}
        for event in self.events:
            for label, start, stop in event.spans(self.hours):
                for channel in event.channels:
                    for other, other_start, other_stop in occupied.get(channel, []):
                        if start < other_stop and other_start < stop:
                            raise OverlappingEvents(sorted({other, label}))
                    occupied.setdefault(channel, []).append((label, start, stop))

    @property
    def start_hour(self):
        return to_epoch_hour(parse_timestamp(self.start))

    def replace(self, **options):
        return self.__class__(**{**self.serialize(), **options})

    def serialize(self):
        data = {key: getattr(self, key) for key in self.defaults}
        for key in ("baselines", "couplings", "noise"):
            data[key] = list(data[key])
        data["temperature"] = dict(self.temperature)
        data["weather"] = dict(self.weather)
        data["events"] = [event.serialize() for event in self.events]
        return data

    @classmethod
    def hydrate(cls, data):
        return cls(**data)

    @classmethod
    def load(cls, path):
        """Reads a YAML scenario file.

        Raises:
            ConfigurationNotFound: when the file does not exist.
            InvalidScenario: when it cannot be parsed or validated.
        """
        if not os.path.isfile(path):
            raise ConfigurationNotFound(f"Scenario file '{path}' does not exist.")
        with open(path, encoding="utf-8") as handle:
            try:
                data = yaml.safe_load(handle)
            except yaml.YAMLError as e:
                raise InvalidScenario(f"Scenario file '{path}' is not valid YAML: {e}")
        if not isinstance(data, dict):
            raise InvalidScenario(f"Scenario file '{path}' must hold a mapping.")
        return cls.hydrate(data)

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return self.serialize() == other.serialize()

    def __repr__(self):
        return f"<Scenario {self.name} {self.start} +{self.hours}h events={len(self.events)}>"
