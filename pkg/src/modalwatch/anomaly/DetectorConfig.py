from ..exceptions import InvalidConfiguration, InvalidPercentile
from ..forecaster.quantiles import QUANTILE_LEVELS

INVERSE_MEAN_FREQUENCY = "inverse-mean-frequency"
UNIFORM = "uniform"

WEIGHT_MODES = (INVERSE_MEAN_FREQUENCY, UNIFORM)


def supported_percentiles():
    """Percentiles p whose band [pi_(100-p), pi_p] uses two modeled levels."""
    percents = {int(round(level * 100)) for level in QUANTILE_LEVELS}
    return tuple(sorted(p for p in percents if p > 50 and 100 - p in percents))


class DetectorConfig:
    """Settings of the sliding outlier detector."""

    defaults = {
        "percentile": 99,
        "window": 96,
        "weights": INVERSE_MEAN_FREQUENCY,
        "batch_size": 256,
    }

    def __init__(self, **options):
        unknown = set(options) - set(self.defaults)
        if unknown:
            raise InvalidConfiguration(
                f"Unknown detector option(s): {', '.join(sorted(unknown))}."
            )
        for key, value in {**self.defaults, **options}.items():
            object.__setattr__(self, key, value)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("DetectorConfig is immutable, use replace()")

    def _validate(self):
        if self.percentile not in supported_percentiles():
            raise InvalidPercentile(
                f"Percentile {self.percentile} is not backed by the modeled quantiles, "
                f"expected one of {supported_percentiles()}."
            )
        if not isinstance(self.window, int) or self.window < 2:
            raise InvalidConfiguration(f"window must be an integer >= 2, got {self.window}.")
        if self.weights not in WEIGHT_MODES:
            raise InvalidConfiguration(
                f"Unknown weights mode '{self.weights}', expected one of {', '.join(WEIGHT_MODES)}."
            )
        if not isinstance(self.batch_size, int) or self.batch_size < 1:
            raise InvalidConfiguration("batch_size must be a positive integer.")

    @property
    def levels(self):
        """(lower, upper) quantile levels of the band."""
        return (100 - self.percentile) / 100.0, self.percentile / 100.0

    def replace(self, **options):
        return self.__class__(**{**self.serialize(), **options})

    def serialize(self):
        return {key: getattr(self, key) for key in self.defaults}

    @classmethod
    def hydrate(cls, data):
        return cls(**data)

    def __eq__(self, other):
        if not isinstance(other, DetectorConfig):
            return NotImplemented
        return self.serialize() == other.serialize()

    def __repr__(self):
        return f"<DetectorConfig {self.serialize()}>"
