"""Public operations of the quantile forecaster."""

import numpy as np

from ..exceptions import EmptyBatch, NonFiniteValue, WindowMismatch
from ..timeseries.channels import N_TARGETS
from . import network
from .ForecastDistribution import ForecastDistribution
from .ModelState import ModelState
from .quantiles import QUANTILE_LEVELS, pinball_gradient, pinball_loss

LEVELS = np.array(QUANTILE_LEVELS)

DEFAULT_PREDICT_BATCH = 256


def init(config, seed=None, stats=None):
    """Creates an untrained model. The same (config, seed) always yields the same
    parameters bit for bit.

    Arguments:
        config {ModelConfig}

    Keyword Arguments:
        seed {int} -- Defaults to config.seed. (default: {None})
        stats {NormStats} -- Embedded normalization, identity if None. (default: {None})

    Returns:
        ModelState
    """
    seed = config.seed if seed is None else seed
    return ModelState(config, network.init_parameters(config, seed), stats=stats)


class Batch:
    """Windows stacked into standardized arrays ready for the network."""

    def __init__(self, targets, covariates, fingerprints, labels):
        self.targets = targets
        self.covariates = covariates
        self.fingerprints = fingerprints
        self.labels = labels

    def __len__(self):
        return len(self.labels)

    def take(self, selection):
        return self.__class__(
            self.targets[selection],
            self.covariates[selection],
            self.fingerprints[selection],
            self.labels[selection],
        )


def stack_windows(model, windows):
    """Standardizes and stacks windows with the model's embedded statistics.

    Raises:
        WindowMismatch: when a window length differs from the model window.
        NonFiniteValue: when an input or label is not finite.
    """
    T = model.config.window
    for window in windows:
        if len(window) != T:
            raise WindowMismatch(f"Window of length {len(window)} given to a model with T={T}.")

    if not windows:
        empty = np.zeros((0, T, N_TARGETS))
        return Batch(
            empty,
            np.zeros((0, T, len(model.stats.covariate_mean))),
            np.zeros((0, T, 3), dtype=np.int64),
            np.zeros((0, N_TARGETS)),
        )

    targets = np.stack([window.targets for window in windows])
    covariates = np.stack([window.covariates for window in windows])
    labels = np.stack([window.label for window in windows])
    if not (np.all(np.isfinite(targets)) and np.all(np.isfinite(covariates))):
        raise NonFiniteValue("Window inputs must be finite.")
    if not np.all(np.isfinite(labels)):
        raise NonFiniteValue("Window labels must be finite.")

    return Batch(
        model.stats.standardize_targets(targets),
        model.stats.standardize_covariates(covariates),
        np.stack([window.fingerprints for window in windows]).astype(np.int64),
        model.stats.standardize_targets(labels),
    )


def _to_hz(model, mean, quantiles):
    stats = model.stats
    return (
        stats.destandardize_targets(mean),
        quantiles * stats.target_std[:, None] + stats.target_mean[:, None],
    )


def predict(model, windows, batch_size=DEFAULT_PREDICT_BATCH):
    """Forecasts every window, batch_size windows at a time.

    Returns:
        tuple -- (means (N, C) in Hz, quantiles (N, C, 7) in Hz)
    """
    batch = stack_windows(model, windows)
    means, quantiles = [], []
    for start in range(0, len(batch), batch_size):
        part = batch.take(slice(start, start + batch_size))
        mean, quantile, _ = network.forward(
            model.parameters, model.config, part.targets, part.covariates, part.fingerprints
        )
        mean, quantile = _to_hz(model, mean, quantile)
        means.append(mean)
        quantiles.append(quantile)
    if not means:
        return np.zeros((0, N_TARGETS)), np.zeros((0, N_TARGETS, len(LEVELS)))
    return np.concatenate(means), np.concatenate(quantiles)


def forward(model, window):
    """Forecasts the sample following a window.

    Returns:
        ForecastDistribution
    """
    means, quantiles = predict(model, [window])
    return ForecastDistribution(means[0], quantiles[0])


def _channel_selection(channels):
    selected = np.zeros(N_TARGETS, dtype=bool)
    if channels is None:
        selected[:] = True
    else:
        selected[list(channels)] = True
    return selected


def loss_terms(mean, quantiles, labels, mean_weight):
    """Per window and channel: summed pinball loss over the 7 levels plus the
    weighted squared error of the mean head, (B, C)."""
    pinball = pinball_loss(labels[:, :, None], quantiles, LEVELS).sum(axis=-1)
    return pinball + mean_weight * (labels - mean) ** 2


def evaluate_batch(model, batch, channels=None, dropout=None, parameters=None):
    """Loss and parameter gradients of an already stacked batch.

    Returns:
        tuple -- (loss, OrderedDict of gradients)
    """
    if not len(batch):
        raise EmptyBatch("A loss needs at least one window.")
    parameters = model.parameters if parameters is None else parameters
    config = model.config
    selected = _channel_selection(channels)

    mean, quantiles, cache = network.forward(
        parameters, config, batch.targets, batch.covariates, batch.fingerprints, dropout
    )
    labels = batch.labels
    count = len(batch) * int(selected.sum())
    loss = float(loss_terms(mean, quantiles, labels, config.mean_weight)[:, selected].sum() / count)

    weight = selected[None, :] / count
    grad_quantiles = pinball_gradient(labels[:, :, None], quantiles, LEVELS) * weight[:, :, None]
    grad_mean = 2.0 * config.mean_weight * (mean - labels) * weight
    grads = network.backward(parameters, config, cache, grad_mean, grad_quantiles)
    return loss, grads


def batch_loss(model, windows, channels=None):
    """Mean over windows and channels of the summed pinball losses plus the
    weighted squared error of the mean head, in standardized units.

    Keyword Arguments:
        channels {iterable} -- 0-based target channels to include. (default: all)

    Raises:
        EmptyBatch: for an empty batch.
    """
    if not windows:
        raise EmptyBatch("A loss needs at least one window.")
    batch = stack_windows(model, windows)
    selected = _channel_selection(channels)
    mean, quantiles, _ = network.forward(
        model.parameters, model.config, batch.targets, batch.covariates, batch.fingerprints
    )
    terms = loss_terms(mean, quantiles, batch.labels, model.config.mean_weight)
    return float(terms[:, selected].sum() / (len(batch) * int(selected.sum())))


def flatten(grads):
    return np.concatenate([value.reshape(-1) for value in grads.values()])


def gradients(model, windows, channels=None):
    """Exact gradient of batch_loss w.r.t. every parameter, as a flat vector in
    canonical parameter order.

    Raises:
        EmptyBatch: for an empty batch.
        NonFiniteValue: when a gradient entry is not finite (index reported).
    """
    if not windows:
        raise EmptyBatch("A gradient needs at least one window.")
    _, grads = evaluate_batch(model, stack_windows(model, windows), channels=channels)
    vector = flatten(grads)
    bad = np.flatnonzero(~np.isfinite(vector))
    if len(bad):
        raise NonFiniteValue("Non-finite gradient", index=int(bad[0]))
    return vector
