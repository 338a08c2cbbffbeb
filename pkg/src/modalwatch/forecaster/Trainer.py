import logging
import math
from collections import OrderedDict

import numpy as np

from ..exceptions import InsufficientData, InvalidConfiguration, TrainingDiverged
from ..timeseries.calendar import format_epoch_hour, from_epoch_hour
from ..timeseries.stats import compute_stats
from ..timeseries.Window import build_windows
from . import network
from .model import evaluate_batch, init, loss_terms, stack_windows
from .ModelState import ModelState

DEFAULT_SPLIT = (0.8, 0.2)


class AdamOptimizer:
    """Per-parameter adaptive steps from bias-corrected first and second moment
    estimates."""

    def __init__(self, parameters, learning_rate=1e-3, beta1=0.9, beta2=0.999, epsilon=1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.steps = 0
        self.first = OrderedDict((name, np.zeros_like(value)) for name, value in parameters.items())
        self.second = OrderedDict(
            (name, np.zeros_like(value)) for name, value in parameters.items()
        )

    def step(self, parameters, grads):
        """Updates parameters in place."""
        self.steps += 1
        first_correction = 1.0 - self.beta1 ** self.steps
        second_correction = 1.0 - self.beta2 ** self.steps
        for name, value in parameters.items():
            grad = grads[name]
            self.first[name] = self.beta1 * self.first[name] + (1.0 - self.beta1) * grad
            self.second[name] = self.beta2 * self.second[name] + (1.0 - self.beta2) * grad * grad
            update = (self.first[name] / first_correction) / (
                np.sqrt(self.second[name] / second_correction) + self.epsilon
            )
            value -= self.learning_rate * update


def chronological_split(windows, split=DEFAULT_SPLIT):
    """Splits windows ordered by label time into (train, validation), train first."""
    train_fraction, validation_fraction = split
    if train_fraction <= 0 or validation_fraction <= 0:
        raise InvalidConfiguration(f"Split fractions must be positive, got {split}.")
    cut = int(math.floor(len(windows) * train_fraction / (train_fraction + validation_fraction)))
    return windows[:cut], windows[cut:]


def fill_unseen_calendar_rows(parameters, fingerprints):
    """Sets the rows of the hour, day and month embeddings that no training
    window reaches to the mean of the rows that were trained.

    Arguments:
        parameters {OrderedDict} -- Updated in place.
        fingerprints {ndarray} -- (B, T, 3) 1-based calendar indexes of the training windows.

    Returns:
        dict -- table name to the sorted 1-based indexes that were filled.
    """
    filled = {}
    for column, name in enumerate(network.CALENDAR_TABLES):
        table = parameters[name]
        seen = np.zeros(len(table), dtype=bool)
        seen[np.unique(fingerprints[..., column]).astype(int) - 1] = True
        if seen.all():
            continue
        table[~seen] = table[seen].mean(axis=0)
        filled[name] = [int(index) + 1 for index in np.flatnonzero(~seen)]
    return filled


class Trainer:
    """Mini-batch training of the quantile forecaster with early stopping on the
    validation loss. Bit-reproducible given (config, data)."""

    def __init__(self, config, split=DEFAULT_SPLIT):
        self.config = config
        self.split = split
        self.logger = logging.getLogger("modalwatch.forecaster.training")

    def prepare(self, series):
        windows = build_windows(series, self.config.window)
        train_windows, validation_windows = chronological_split(windows, self.split)
        if not train_windows or not validation_windows:
            raise InsufficientData(
                f"Found {len(windows)} windows of length {self.config.window}; "
                "both the training and the validation split need at least one."
            )

        # statistics come from the hours the training windows span, nothing later
        first_hour = int(train_windows[0].hours[0])
        last_hour = int(train_windows[-1].label_hour)
        stats = compute_stats(
            series, from_epoch_hour(first_hour), from_epoch_hour(last_hour + 1)
        )
        return train_windows, validation_windows, stats

    def validation_loss(self, model, parameters, batch):
        total = 0.0
        for start in range(0, len(batch), self.config.batch_size):
            part = batch.take(slice(start, start + self.config.batch_size))
            mean, quantiles, _ = network.forward(
                parameters, self.config, part.targets, part.covariates, part.fingerprints
            )
            total += float(loss_terms(mean, quantiles, part.labels, self.config.mean_weight).sum())
        return total / (len(batch) * batch.labels.shape[1])

    def _dropout_masks(self, rng, size):
        rate = self.config.dropout
        if rate == 0:
            return None
        inner = network.FEED_FORWARD_FACTOR * self.config.hidden
        return [
            (rng.random((size, self.config.window, inner)) >= rate) / (1.0 - rate)
            for _ in range(self.config.blocks)
        ]

    def train(self, series):
        config = self.config
        train_windows, validation_windows, stats = self.prepare(series)
        model = init(config, stats=stats)
        if config.max_epochs == 0:
            return model

        train_batch = stack_windows(model, train_windows)
        validation_batch = stack_windows(model, validation_windows)

        parameters = OrderedDict((name, value.copy()) for name, value in model.parameters.items())
        optimizer = AdamOptimizer(parameters, learning_rate=config.learning_rate)
        rng = np.random.default_rng([config.seed, 1])

        best = (math.inf, None, 0)
        log, waited, reason = [], 0, "max-epochs"
        for epoch in range(1, config.max_epochs + 1):
            order = rng.permutation(len(train_batch))
            running = 0.0
            for start in range(0, len(order), config.batch_size):
                selection = order[start : start + config.batch_size]
                loss, grads = evaluate_batch(
                    model,
                    train_batch.take(selection),
                    dropout=self._dropout_masks(rng, len(selection)),
                    parameters=parameters,
                )
                if not math.isfinite(loss):
                    raise TrainingDiverged(epoch, loss)
                optimizer.step(parameters, grads)
                running += loss * len(selection)

            filled = fill_unseen_calendar_rows(parameters, train_batch.fingerprints)
            if filled and epoch == 1:
                self.logger.warning(
                    "The training windows do not reach every calendar row, untrained rows "
                    "take the mean of the trained ones",
                    extra={"filled": filled},
                )
            train_loss = running / len(train_batch)
            validation_loss = self.validation_loss(model, parameters, validation_batch)
            if not math.isfinite(validation_loss):
                raise TrainingDiverged(epoch, validation_loss)

            if validation_loss < best[0]:
                best = (
                    validation_loss,
                    OrderedDict((name, value.copy()) for name, value in parameters.items()),
                    epoch,
                )
                waited = 0
            else:
                waited += 1

            log.append(
                {
                    "epoch": epoch,
                    "train_loss": train_loss,
                    "validation_loss": validation_loss,
                    "best_epoch": best[2],
                }
            )
            self.logger.info(
                f"Epoch {epoch}: train {train_loss:.6f}, validation {validation_loss:.6f}",
                extra={
                    "epoch": epoch,
                    "train_loss": train_loss,
                    "validation_loss": validation_loss,
                    "best_epoch": best[2],
                },
            )
            if waited >= config.patience:
                self.logger.info(
                    f"Early stopping after epoch {epoch}, best epoch {best[2]}",
                    extra={"epoch": epoch, "best_epoch": best[2]},
                )
                reason = "early-stopping"
                break

        log.append(
            {
                "stop_reason": reason,
                "best_epoch": best[2],
                "trained_from": format_epoch_hour(int(train_windows[0].hours[0])),
                "trained_to": format_epoch_hour(int(validation_windows[-1].label_hour) + 1),
            }
        )
        return ModelState(config, best[1], stats=stats, log=log)


def train(series, config, split=DEFAULT_SPLIT):
    """Trains a forecaster on a gap-filled series.

    Arguments:
        series {Series} -- The training range, already gap-filled.
        config {ModelConfig}

    Keyword Arguments:
        split {tuple} -- (train, validation) fractions, chronological. (default: {(0.8, 0.2)})

    Raises:
        InsufficientData: when either split has no window.
        TrainingDiverged: when a loss turns non-finite (epoch reported).

    Returns:
        ModelState -- the parameters with the best validation loss.
    """
    return Trainer(config, split=split).train(series)
