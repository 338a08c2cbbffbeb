import logging

import numpy as np

from ..exceptions import DegenerateChannel, EmptyRange, InsufficientData
from .channels import COVARIATE_FEATURES, N_TARGETS, TARGET_CHANNELS, WIND_DIR
from .features import covariate_features
from .NormStats import NormStats


def _channel_stats(values, present, names):
    means, stds = [], []
    for column, name in enumerate(names):
        sample = values[present[:, column], column]
        if len(sample) < 2:
            raise InsufficientData(
                f"Channel '{name}' needs at least 2 present values, found {len(sample)}."
            )
        std = float(np.std(sample, ddof=1))
        if not std > 0:
            raise DegenerateChannel(name)
        means.append(float(np.mean(sample)))
        stds.append(std)
    return means, stds


def compute_stats(series, start=None, end=None, include_synthetic=False):
    """Computes normalization statistics over the samples of a half-open range.

    Arguments:
        series {Series} -- The source series.

    Keyword Arguments:
        start {pendulum.DateTime} -- Inclusive lower bound. (default: {None})
        end {pendulum.DateTime} -- Exclusive upper bound. (default: {None})
        include_synthetic {bool} -- Whether gap-filled values count. (default: {False})

    Raises:
        EmptyRange: when the range selects no sample.
        DegenerateChannel: when a channel is constant.

    Returns:
        NormStats
    """
    selected = series.between(start, end)
    if not len(selected):
        raise EmptyRange(f"No samples between {start} and {end}.")

    present = selected.mask
    if not include_synthetic:
        present = present & ~selected.synthetic

    target_mean, target_std = _channel_stats(
        selected.targets, present[:, :N_TARGETS], TARGET_CHANNELS
    )

    features = covariate_features(selected.covariates)
    covariate_present = present[:, N_TARGETS:]
    # cos and sin share the presence flag of the wind direction
    feature_present = np.concatenate(
        [
            covariate_present[:, :WIND_DIR],
            covariate_present[:, WIND_DIR : WIND_DIR + 1],
            covariate_present[:, WIND_DIR : WIND_DIR + 1],
        ],
        axis=1,
    )
    covariate_mean, covariate_std = _channel_stats(
        features, feature_present, COVARIATE_FEATURES
    )

    logging.getLogger("modalwatch.timeseries.stats").debug(
        f"Computed normalization statistics over {len(selected)} samples",
        extra={"samples": len(selected), "target_mean": target_mean},
    )
    return NormStats(target_mean, target_std, covariate_mean, covariate_std)
