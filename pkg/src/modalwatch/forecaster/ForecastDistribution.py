import numpy as np

from ..timeseries.channels import TARGET_CHANNELS
from .quantiles import QUANTILE_LEVELS, level_index


class ForecastDistribution:
    """Predicted distribution of the next sample: per target channel a mean and the
    7 quantiles of QUANTILE_LEVELS, all in Hz."""

    levels = QUANTILE_LEVELS

    def __init__(self, mean, quantiles):
        self.mean = np.array(mean, dtype=np.float64).reshape(len(TARGET_CHANNELS))
        self.quantiles = np.array(quantiles, dtype=np.float64).reshape(
            len(TARGET_CHANNELS), len(QUANTILE_LEVELS)
        )
        self.mean.setflags(write=False)
        self.quantiles.setflags(write=False)

    @property
    def median(self):
        return self.quantile(0.50)

    def quantile(self, level):
        """The predicted quantile of every channel at one of the modeled levels."""
        return self.quantiles[:, level_index(level)]

    def band(self, p):
        """(lower, upper) bounds of the percentile band [pi_(100-p), pi_p]."""
        return self.quantile((100 - p) / 100.0), self.quantile(p / 100.0)

    def is_monotone(self):
        return bool(np.all(np.diff(self.quantiles, axis=1) >= 0))

    def serialize(self):
        return {
            channel: {
                "mean": float(self.mean[c]),
                **{
                    f"q{int(round(level * 100)):02d}": float(self.quantiles[c, i])
                    for i, level in enumerate(self.levels)
                },
            }
            for c, channel in enumerate(TARGET_CHANNELS)
        }

    def __eq__(self, other):
        if not isinstance(other, ForecastDistribution):
            return NotImplemented
        return np.array_equal(self.mean, other.mean) and np.array_equal(
            self.quantiles, other.quantiles
        )

    def __repr__(self):
        return f"<ForecastDistribution median={self.median.tolist()}>"
