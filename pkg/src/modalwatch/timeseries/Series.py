import numpy as np

from ..exceptions import InvalidSample
from .calendar import fingerprints, from_epoch_hour, to_epoch_hour
from .channels import (
    COVARIATE_CHANNELS,
    HUMIDITY,
    N_COVARIATES,
    N_FIELDS,
    N_TARGETS,
    RAIN,
    TARGET_CHANNELS,
    UNITS,
    WIND_AVG,
    WIND_DIR,
    WIND_PEAK,
)
from .MonitoringSample import MonitoringSample


def _frozen(array):
    array.setflags(write=False)
    return array


class Series:
    """Ordered hourly monitoring samples stored column-wise.

    Targets and covariates are float arrays where NaN marks a missing value. The
    synthetic array flags values that were filled in by gap handling rather than
    observed. Instances are immutable: every transformation returns a new Series.
    """

    target_channels = TARGET_CHANNELS
    covariate_channels = COVARIATE_CHANNELS
    units = UNITS

    def __init__(self, hours, targets, covariates, synthetic=None, provenance=""):
        hours = np.array(hours, dtype=np.int64).reshape(-1)
        targets = np.array(targets, dtype=np.float64).reshape(len(hours), N_TARGETS)
        covariates = np.array(covariates, dtype=np.float64).reshape(
            len(hours), N_COVARIATES
        )
        if synthetic is None:
            synthetic = np.zeros((len(hours), N_FIELDS), dtype=bool)
        synthetic = np.array(synthetic, dtype=bool).reshape(len(hours), N_FIELDS)

        if len(hours) > 1 and np.any(np.diff(hours) <= 0):
            raise InvalidSample("Series timestamps must be strictly increasing.")

        self.hours = _frozen(hours)
        self.targets = _frozen(targets)
        self.covariates = _frozen(covariates)
        self.synthetic = _frozen(synthetic)
        self.provenance = provenance
        self._fingerprints = None

        self._validate()

    def _validate(self):
        targets, covariates = self.targets, self.covariates

        if np.any(np.isinf(targets)) or np.any(targets <= 0):
            raise InvalidSample("Frequencies must be finite and strictly positive.")
        if np.any(np.isinf(covariates)):
            raise InvalidSample("Covariates must be finite.")

        with np.errstate(invalid="ignore"):
            if np.any(covariates[:, RAIN] < 0):
                raise InvalidSample("Rainfall must be non-negative.")
            humidity = covariates[:, HUMIDITY]
            if np.any((humidity < 0) | (humidity > 100)):
                raise InvalidSample("Humidity must lie in [0, 100].")
            if np.any(covariates[:, WIND_AVG] < 0) or np.any(covariates[:, WIND_PEAK] < 0):
                raise InvalidSample("Wind speeds must be non-negative.")
            direction = covariates[:, WIND_DIR]
            if np.any((direction < 0) | (direction >= 360)):
                raise InvalidSample("Wind direction must lie in [0, 360).")

            genuine = ~(
                self.synthetic[:, N_TARGETS + WIND_AVG]
                | self.synthetic[:, N_TARGETS + WIND_PEAK]
            )
            below = covariates[:, WIND_PEAK] < covariates[:, WIND_AVG]
            if np.any(genuine & below):
                raise InvalidSample("Peak wind speed must not be below the average.")

    @classmethod
    def from_samples(cls, samples, provenance=""):
        samples = list(samples)
        return cls(
            [to_epoch_hour(sample.timestamp) for sample in samples],
            [[np.nan if v is None else v for v in s.targets] for s in samples],
            [[np.nan if v is None else v for v in s.covariates] for s in samples],
            synthetic=[s.synthetic for s in samples] if samples else None,
            provenance=provenance,
        )

    def __len__(self):
        return len(self.hours)

    def __iter__(self):
        for index in range(len(self)):
            yield self[index]

    def __getitem__(self, index):
        if isinstance(index, slice):
            return self._take(index)
        return MonitoringSample(
            from_epoch_hour(self.hours[index]),
            self.targets[index].tolist(),
            self.covariates[index].tolist(),
            synthetic=self.synthetic[index].tolist(),
        )

    def _take(self, selection):
        return self.__class__(
            self.hours[selection],
            self.targets[selection],
            self.covariates[selection],
            synthetic=self.synthetic[selection],
            provenance=self.provenance,
        )

    @property
    def values(self):
        """All 11 fields side by side, targets first."""
        return np.concatenate([self.targets, self.covariates], axis=1)

    @property
    def mask(self):
        """Presence flags, True where a value exists (observed or filled)."""
        return ~np.isnan(self.values)

    @property
    def fingerprints(self):
        if self._fingerprints is None:
            self._fingerprints = _frozen(fingerprints(self.hours))
        return self._fingerprints

    @property
    def timestamps(self):
        return [from_epoch_hour(hour) for hour in self.hours]

    @property
    def start(self):
        return from_epoch_hour(self.hours[0]) if len(self) else None

    @property
    def end(self):
        return from_epoch_hour(self.hours[-1]) if len(self) else None

    @property
    def is_regular(self):
        """True when samples sit on a gapless 1-hour grid."""
        return len(self) < 2 or bool(np.all(np.diff(self.hours) == 1))

    def between(self, start=None, end=None):
        """Samples within the half-open range [start, end). Either bound may be None."""
        selection = np.ones(len(self), dtype=bool)
        if start is not None:
            selection &= self.hours >= to_epoch_hour(start)
        if end is not None:
            selection &= self.hours < to_epoch_hour(end)
        return self._take(selection)

    def channel(self, name):
        if name in TARGET_CHANNELS:
            return self.targets[:, TARGET_CHANNELS.index(name)]
        return self.covariates[:, COVARIATE_CHANNELS.index(name)]

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            np.array_equal(self.hours, other.hours)
            and np.array_equal(self.targets, other.targets, equal_nan=True)
            and np.array_equal(self.covariates, other.covariates, equal_nan=True)
            and np.array_equal(self.synthetic, other.synthetic)
        )

    def __repr__(self):
        if not len(self):
            return "<Series empty>"
        start, end = self.start.to_iso8601_string(), self.end.to_iso8601_string()
        return f"<Series {len(self)} samples {start} .. {end}>"
