import inflection

from ..exceptions import InvalidScenario
from ..timeseries.channels import TARGET_CHANNELS

SPIKE = "spike"
STEP_SHIFT = "step-shift"
PERIODIC_CHANNEL_2 = "periodic-channel-2"
MULTI_CHANNEL_TRANSIENT = "multi-channel-transient"

KINDS = (SPIKE, STEP_SHIFT, PERIODIC_CHANNEL_2, MULTI_CHANNEL_TRANSIENT)

DEFAULT_PERIOD = 168


def normalize_kind(kind):
    """Accepts 'step-shift', 'step_shift' or 'StepShift' alike."""
    kind = inflection.dasherize(inflection.underscore(str(kind).strip()))
    return kind.replace("channel2", "channel-2")


def normalize_channel(channel):
    """Maps 1-based channel numbers and names like 'f2' to the channel name."""
    if isinstance(channel, bool):
        raise InvalidScenario(f"Unknown channel {channel!r}.")
    if isinstance(channel, int):
        if not 1 <= channel <= len(TARGET_CHANNELS):
            raise InvalidScenario(f"Channel number {channel} is outside 1..{len(TARGET_CHANNELS)}.")
        return TARGET_CHANNELS[channel - 1]
    if channel in TARGET_CHANNELS:
        return channel
    raise InvalidScenario(f"Unknown channel {channel!r}.")


class AnomalyEvent:
    """An anomaly injected into synthetic data.

    start is the offset in hours from the start of the scenario; magnitude is in
    multiples of each affected channel's noise sigma and direction gives the sign
    of the offset. Periodic events repeat a pulse of `duration` hours every
    `period` hours, `repeats` times or until the end of the scenario.
    """

    defaults = {
        "id": None,
        "kind": SPIKE,
        "start": 0,
        "duration": 1,
        "magnitude": 5.0,
        "channels": None,
        "direction": 1,
        "period": DEFAULT_PERIOD,
        "repeats": None,
    }

    def __init__(self, **options):
        unknown = set(options) - set(self.defaults)
        if unknown:
            raise InvalidScenario(f"Unknown event field(s): {', '.join(sorted(unknown))}.")
        values = {**self.defaults, **options}
        values["kind"] = normalize_kind(values["kind"])

        if values["channels"] is None:
            values["channels"] = self._default_channels(values["kind"])
        if isinstance(values["channels"], (str, int)):
            values["channels"] = [values["channels"]]
        values["channels"] = tuple(normalize_channel(c) for c in values["channels"])
        if values["id"] is None:
            values["id"] = f"{values['kind']}@{values['start']}"
        values["id"] = str(values["id"])

        for key, value in values.items():
            object.__setattr__(self, key, value)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("AnomalyEvent is immutable")

    @staticmethod
    def _default_channels(kind):
        if kind == PERIODIC_CHANNEL_2:
            return (TARGET_CHANNELS[1],)
        if kind == MULTI_CHANNEL_TRANSIENT:
            return TARGET_CHANNELS
        return (TARGET_CHANNELS[0],)

    def _validate(self):
        if self.kind not in KINDS:
            raise InvalidScenario(
                f"Event {self.id}: unknown kind '{self.kind}', expected one of {', '.join(KINDS)}."
            )
        if not isinstance(self.start, int) or self.start < 0:
            raise InvalidScenario(f"Event {self.id}: start must be a non-negative hour offset.")
        if not isinstance(self.duration, int) or self.duration < 1:
            raise InvalidScenario(f"Event {self.id}: duration must be at least 1 hour.")
        if not self.magnitude > 0:
            raise InvalidScenario(f"Event {self.id}: magnitude must be positive.")
        if not self.id or ";" in self.id or "," in self.id:
            raise InvalidScenario(f"Event id {self.id!r} must be non-empty without ';' or ','.")
        if not self.channels:
            raise InvalidScenario(f"Event {self.id}: at least one channel is required.")
        if len(set(self.channels)) != len(self.channels):
            raise InvalidScenario(f"Event {self.id}: channels are repeated.")
        if self.direction not in (1, -1):
            raise InvalidScenario(f"Event {self.id}: direction must be +1 or -1.")
        if self.kind == SPIKE and self.duration != 1:
            raise InvalidScenario(f"Event {self.id}: a spike lasts exactly 1 hour.")
        if self.kind == PERIODIC_CHANNEL_2:
            if self.channels != (TARGET_CHANNELS[1],):
                raise InvalidScenario(f"Event {self.id}: periodic pulses affect channel 2 only.")
            if not isinstance(self.period, int) or self.period <= self.duration:
                raise InvalidScenario(f"Event {self.id}: period must exceed the pulse duration.")
            if self.repeats is not None and (not isinstance(self.repeats, int) or self.repeats < 1):
                raise InvalidScenario(f"Event {self.id}: repeats must be a positive integer.")
        if self.kind == MULTI_CHANNEL_TRANSIENT and len(self.channels) < 2:
            raise InvalidScenario(f"Event {self.id}: a multi-channel transient needs 2+ channels.")

    def spans(self, hours):
        """(label id, start, stop) hour offsets of every labeled stretch, stop
        exclusive, for a scenario lasting `hours` hours."""
        if self.kind != PERIODIC_CHANNEL_2:
            return [(self.id, self.start, self.start + self.duration)]

        spans, start, pulse = [], self.start, 1
        while start + self.duration <= hours and (self.repeats is None or pulse <= self.repeats):
            spans.append((f"{self.id}.{pulse}", start, start + self.duration))
            start += self.period
            pulse += 1
        return spans

    @property
    def title(self):
        return inflection.humanize(inflection.underscore(self.kind))

    def serialize(self):
        data = {key: getattr(self, key) for key in self.defaults}
        data["channels"] = list(self.channels)
        return data

    @classmethod
    def hydrate(cls, data):
        return cls(**data)

    def __eq__(self, other):
        if not isinstance(other, AnomalyEvent):
            return NotImplemented
        return self.serialize() == other.serialize()

    def __repr__(self):
        return f"<AnomalyEvent {self.id} {self.kind} +{self.start}h x{self.duration}h>"
