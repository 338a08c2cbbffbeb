class ChannelVerdict:
    """The band check of one target channel at one timestep, values in Hz."""

    __slots__ = ("channel", "observed", "lower", "upper", "violated", "deviation")

    def __init__(self, channel, observed, lower, upper, violated, deviation):
        for name, value in (
            ("channel", channel),
            ("observed", float(observed)),
            ("lower", float(lower)),
            ("upper", float(upper)),
            ("violated", bool(violated)),
            ("deviation", float(deviation)),
        ):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    def serialize(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __eq__(self, other):
        if not isinstance(other, ChannelVerdict):
            return NotImplemented
        return self.serialize() == other.serialize()

    def __repr__(self):
        state = "violated" if self.violated else "ok"
        return f"<ChannelVerdict {self.channel} {state} deviation={self.deviation}>"
