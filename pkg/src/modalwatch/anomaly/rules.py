"""The percentile-band outlier rule, deviation magnitudes and the weighted score.

Every function accepts scalars or numpy arrays with the 5 target channels on the
last axis.
"""

import numpy as np

from ..exceptions import InvalidBand, InvalidWeight
from ..forecaster.quantiles import level_index
from .DetectorConfig import INVERSE_MEAN_FREQUENCY, UNIFORM, DetectorConfig


def band_indexes(p):
    """Positions of pi_(100-p) and pi_p among the modeled quantiles."""
    lower, upper = DetectorConfig(percentile=p).levels
    return level_index(lower), level_index(upper)


def violations(observed, lower, upper):
    """True where observed lies strictly outside [lower, upper]. The bounds
    themselves are inside the band."""
    observed = np.asarray(observed, dtype=np.float64)
    return (observed < lower) | (observed > upper)


def detect_point(observed, dist, p=99):
    """Checks one observation against a forecast distribution.

    Arguments:
        observed {sequence} -- 5 observed frequencies in Hz.
        dist {ForecastDistribution}

    Keyword Arguments:
        p {int} -- Percentile of the band, 75, 90 or 99. (default: {99})

    Raises:
        InvalidPercentile: when p is not backed by modeled quantiles.

    Returns:
        tuple -- one boolean per channel, True for an anomalous channel.
    """
    lower, upper = band_indexes(p)
    flags = violations(observed, dist.quantiles[:, lower], dist.quantiles[:, upper])
    return tuple(bool(flag) for flag in flags)


def deviation(observed, lower, upper):
    """max(0, lower - observed, observed - upper) in Hz.

    Raises:
        InvalidBand: when lower > upper.
    """
    observed = np.asarray(observed, dtype=np.float64)
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    if np.any(lower > upper):
        raise InvalidBand("The lower bound of a band must not exceed its upper bound.")
    value = np.maximum(0.0, np.maximum(lower - observed, observed - upper))
    return float(value) if value.ndim == 0 else value


def score_divisors(mode, mean_frequencies):
    """Per-channel divisors of the deviations: the training mean frequency, or
    ones when channels are weighted uniformly."""
    mean_frequencies = np.asarray(mean_frequencies, dtype=np.float64)
    if mode == INVERSE_MEAN_FREQUENCY:
        return mean_frequencies
    if mode == UNIFORM:
        return np.ones_like(mean_frequencies)
    raise InvalidWeight(f"Unknown weights mode '{mode}'.")


def _check_frequencies(mean_frequencies):
    if not np.all(np.isfinite(mean_frequencies)) or np.any(mean_frequencies <= 0):
        raise InvalidWeight("Mean frequencies used as weights must be positive and finite.")


def weighted_score(deviations, mean_frequencies):
    """Sum over channels of deviation / mean frequency, so that lower modes weigh
    more than higher ones.

    Raises:
        InvalidWeight: when a mean frequency is not positive.
    """
    mean_frequencies = np.asarray(mean_frequencies, dtype=np.float64)
    _check_frequencies(mean_frequencies)
    score = (np.asarray(deviations, dtype=np.float64) / mean_frequencies).sum(axis=-1)
    return float(score) if np.ndim(score) == 0 else score
