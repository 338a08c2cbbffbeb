import math

from ..exceptions import InvalidSample
from .calendar import fingerprint
from .channels import (
    COVARIATE_CHANNELS,
    HUMIDITY,
    N_TARGETS,
    RAIN,
    TARGET_CHANNELS,
    WIND_AVG,
    WIND_DIR,
    WIND_PEAK,
)


def _present(value):
    return value is not None and not math.isnan(value)


def validate_values(targets, covariates, synthetic=None):
    """Checks the physical invariants of one observation. Missing values (None or
    NaN) are skipped.

    Raises:
        InvalidSample: when a present value is out of its physical range.
    """
    synthetic = synthetic or (False,) * (len(targets) + len(covariates))

    for name, value in zip(TARGET_CHANNELS, targets):
        if _present(value) and not (math.isfinite(value) and value > 0):
            raise InvalidSample(f"Frequency {name} must be finite and positive, got {value}.")

    for name, value in zip(COVARIATE_CHANNELS, covariates):
        if _present(value) and not math.isfinite(value):
            raise InvalidSample(f"Covariate {name} must be finite, got {value}.")

    rain, humidity = covariates[RAIN], covariates[HUMIDITY]
    average, peak, direction = covariates[WIND_AVG], covariates[WIND_PEAK], covariates[WIND_DIR]

    if _present(rain) and rain < 0:
        raise InvalidSample(f"Rainfall must be non-negative, got {rain}.")
    if _present(humidity) and not 0 <= humidity <= 100:
        raise InvalidSample(f"Humidity must lie in [0, 100], got {humidity}.")
    if _present(average) and average < 0:
        raise InvalidSample(f"Average wind speed must be non-negative, got {average}.")
    if _present(peak) and peak < 0:
        raise InvalidSample(f"Peak wind speed must be non-negative, got {peak}.")
    if _present(direction) and not 0 <= direction < 360:
        raise InvalidSample(f"Wind direction must lie in [0, 360), got {direction}.")

    genuine = not (
        synthetic[N_TARGETS + WIND_AVG] or synthetic[N_TARGETS + WIND_PEAK]
    )
    if genuine and _present(average) and _present(peak) and peak < average:
        raise InvalidSample(
            f"Peak wind speed {peak} is below the average wind speed {average}."
        )


class MonitoringSample:
    """One hourly observation of the monitored structure.

    Missing values are stored as None and reported through mask, values filled in
    by gap handling are reported through synthetic.
    """

    __slots__ = ("timestamp", "targets", "covariates", "fingerprints", "synthetic")

    def __init__(self, timestamp, targets, covariates, synthetic=None):
        targets = tuple(float(v) if _present(v) else None for v in targets)
        covariates = tuple(float(v) if _present(v) else None for v in covariates)
        if len(targets) != len(TARGET_CHANNELS) or len(covariates) != len(
            COVARIATE_CHANNELS
        ):
            raise InvalidSample(
                f"Expected {len(TARGET_CHANNELS)} targets and {len(COVARIATE_CHANNELS)} covariates."
            )
        synthetic = tuple(bool(s) for s in (synthetic or (False,) * 11))
        validate_values(targets, covariates, synthetic)

        object.__setattr__(self, "timestamp", timestamp)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "covariates", covariates)
        object.__setattr__(self, "fingerprints", fingerprint(timestamp))
        object.__setattr__(self, "synthetic", synthetic)

    def __setattr__(self, name, value):
        raise AttributeError(f"{self.__class__.__name__} is immutable")

    @property
    def mask(self):
        return tuple(value is not None for value in self.targets + self.covariates)

    @property
    def hour(self):
        return self.fingerprints[0]

    @property
    def day(self):
        return self.fingerprints[1]

    @property
    def month(self):
        return self.fingerprints[2]

    def serialize(self):
        return {
            "timestamp": self.timestamp.to_iso8601_string(),
            **dict(zip(TARGET_CHANNELS, self.targets)),
            **dict(zip(COVARIATE_CHANNELS, self.covariates)),
        }

    def __eq__(self, other):
        if not isinstance(other, MonitoringSample):
            return NotImplemented
        return (
            self.timestamp == other.timestamp
            and self.targets == other.targets
            and self.covariates == other.covariates
            and self.synthetic == other.synthetic
        )

    def __repr__(self):
        return f"<MonitoringSample {self.timestamp.to_iso8601_string()} {self.targets}>"
