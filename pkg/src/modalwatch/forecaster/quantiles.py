"""Quantile decoding and the pinball loss."""

import numpy as np

from ..exceptions import InvalidPercentile

QUANTILE_LEVELS = (0.01, 0.10, 0.25, 0.50, 0.75, 0.90, 0.99)

MEDIAN_INDEX = QUANTILE_LEVELS.index(0.50)

# raw increments per channel: 3 above the median (0.75, 0.90, 0.99) then 3 below
# it (0.25, 0.10, 0.01)
N_INCREMENTS = 6


def softplus(x):
    return np.logaddexp(0.0, x)


def sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(x, dtype=np.float64)))


def decode_quantile_array(median, raw):
    """Vectorized decode. median has shape (...,) and raw (..., 6); returns (..., 7)
    quantiles ordered like QUANTILE_LEVELS, non-decreasing by construction."""
    median = np.asarray(median, dtype=np.float64)
    steps = softplus(np.asarray(raw, dtype=np.float64))
    upper = median[..., None] + np.cumsum(steps[..., :3], axis=-1)
    lower = median[..., None] - np.cumsum(steps[..., 3:], axis=-1)
    return np.concatenate([lower[..., ::-1], median[..., None], upper], axis=-1)


def decode_quantile_backward(grad_quantiles, raw):
    """Pulls a gradient w.r.t. the 7 quantiles back to (median, raw increments)."""
    g = grad_quantiles
    grad_median = g.sum(axis=-1)
    # each upper step feeds its own level and every level above it
    grad_up = np.cumsum(g[..., :MEDIAN_INDEX:-1], axis=-1)[..., ::-1]
    grad_down = -np.cumsum(g[..., :MEDIAN_INDEX], axis=-1)[..., ::-1]
    grad_steps = np.concatenate([grad_up, grad_down], axis=-1)
    return grad_median, grad_steps * sigmoid(raw)


def decode_quantiles(median, increments):
    """Decodes a median and 6 raw increments into 7 ordered quantile values.

    The median is the 0.50 quantile. Upper quantiles (0.75, 0.90, 0.99) add the
    running sum of softplus(increments[:3]) to it, lower quantiles (0.25, 0.10,
    0.01) subtract the running sum of softplus(increments[3:]).

    Arguments:
        median {float}
        increments {sequence} -- 6 finite reals.

    Returns:
        tuple -- 7 floats ordered like QUANTILE_LEVELS.
    """
    return tuple(
        float(v) for v in decode_quantile_array(np.float64(median), np.asarray(increments))
    )


def pinball_loss(y, predicted, level):
    """max(q * (y - predicted), (q - 1) * (y - predicted)); works on arrays too."""
    residual = np.asarray(y, dtype=np.float64) - predicted
    loss = np.maximum(level * residual, (level - 1.0) * residual)
    return float(loss) if np.ndim(loss) == 0 else loss


def pinball_gradient(y, predicted, level):
    """Derivative of pinball_loss w.r.t. the prediction. At the kink y == predicted
    the q - 1 branch is taken, giving 1 - q."""
    residual = np.asarray(y, dtype=np.float64) - predicted
    return np.where(residual > 0, -level, 1.0 - level)


def level_index(level):
    """Position of a modeled quantile level in QUANTILE_LEVELS."""
    for index, modeled in enumerate(QUANTILE_LEVELS):
        if np.isclose(level, modeled):
            return index
    raise InvalidPercentile(f"Quantile level {level} is not modeled.")
