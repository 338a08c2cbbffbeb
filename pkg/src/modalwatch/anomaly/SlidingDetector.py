import logging

import numpy as np

from ..exceptions import SeriesTooShort, WindowMismatch
from ..forecaster.ForecastDistribution import ForecastDistribution
from ..forecaster.model import predict
from ..timeseries.channels import TARGET_CHANNELS
from ..timeseries.gaps import regularize
from ..timeseries.Window import build_windows
from .AnomalyRecord import AnomalyRecord
from .ChannelVerdict import ChannelVerdict
from .DetectorConfig import DetectorConfig
from .rules import band_indexes, deviation, score_divisors, violations, weighted_score


class SlidingDetector:
    """Slides a width-T window over a series and checks every following hour
    against the band the model predicts for it.

    Example:
        records = SlidingDetector(model, DetectorConfig(percentile=99)).run(series)
    """

    def __init__(self, model, config=None):
        self.model = model
        self.config = config or DetectorConfig(window=model.config.window)
        if self.model.config.window != self.config.window:
            raise WindowMismatch(
                f"The model was trained with T={model.config.window} but the detector "
                f"is configured with T={self.config.window}."
            )
        self.logger = logging.getLogger("modalwatch.anomaly.sliding")

    @property
    def divisors(self):
        return score_divisors(self.config.weights, self.model.stats.mean_frequencies)

    def score(self, observed, quantiles):
        """Vectorized check of observations (N, C) against forecast quantiles
        (N, C, 7).

        Returns:
            tuple -- (lower, upper, violated, deviations, scores)
        """
        lower_index, upper_index = band_indexes(self.config.percentile)
        lower = quantiles[..., lower_index]
        upper = quantiles[..., upper_index]
        violated = violations(observed, lower, upper)
        deviations = deviation(observed, lower, upper)
        return lower, upper, violated, deviations, weighted_score(deviations, self.divisors)

    def run(self, series):
        """One AnomalyRecord per hour of the series, ordered by time.

        Raises:
            SeriesTooShort: when the series spans fewer than T + 1 hours.
        """
        T = self.config.window
        series = regularize(series)
        if len(series) < T + 1:
            raise SeriesTooShort(
                f"Sliding detection with T={T} needs at least {T + 1} hours, got {len(series)}."
            )

        windows = build_windows(series, T)
        means, quantiles = predict(self.model, windows, batch_size=self.config.batch_size)
        observed = np.array([window.label for window in windows]).reshape(-1, len(TARGET_CHANNELS))
        lower, upper, violated, deviations, scores = self.score(observed, quantiles)

        scored = {}
        for i, window in enumerate(windows):
            verdicts = [
                ChannelVerdict(
                    channel,
                    observed[i, c],
                    lower[i, c],
                    upper[i, c],
                    violated[i, c],
                    deviations[i, c],
                )
                for c, channel in enumerate(TARGET_CHANNELS)
            ]
            scored[window.label_hour] = AnomalyRecord(
                window.label_hour,
                verdicts,
                scores[i],
                forecast=ForecastDistribution(means[i], quantiles[i]),
                observed=observed[i],
            )

        records = [
            scored.get(int(hour)) or AnomalyRecord.unscored(hour, observed=series.targets[i])
            for i, hour in enumerate(series.hours)
        ]
        anomalous = int(violated.any(axis=1).sum()) if len(windows) else 0
        self.logger.info(
            f"Scored {len(windows)} of {len(records)} hours, {anomalous} anomalous",
            extra={
                "hours": len(records),
                "scored": len(windows),
                "anomalous": anomalous,
                "percentile": self.config.percentile,
            },
        )
        return records


def run_sliding(model, series, config=None):
    """Runs the detector over a whole observation period.

    Arguments:
        model {ModelState}
        series {Series}

    Keyword Arguments:
        config {DetectorConfig} -- Defaults to p=99 with the model window. (default: {None})

    Raises:
        WindowMismatch: when the model and detector windows differ.

    Returns:
        list -- of AnomalyRecord, one per hour, unscored where no valid window exists.
    """
    return SlidingDetector(model, config).run(series)
