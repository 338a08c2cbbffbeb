"""The attentive quantile network: parameter layout, forward pass and the exact
reverse-mode backward pass, all on numpy arrays batched over windows.

Shapes use B for windows in a batch, T for the window length, H for the hidden
width, F for the per-timestep feature width and C for the 5 target channels.
"""

from collections import OrderedDict

import numpy as np

from ..timeseries.calendar import DAYS_PER_MONTH, HOURS_PER_DAY, MONTHS_PER_YEAR
from ..timeseries.channels import COVARIATE_FEATURES, N_TARGETS
from .quantiles import (
    N_INCREMENTS,
    decode_quantile_array,
    decode_quantile_backward,
)

FEED_FORWARD_FACTOR = 2
CALENDAR_TABLES = ("embed.hour", "embed.day", "embed.month")


def feature_width(config):
    return (
        N_TARGETS
        + len(COVARIATE_FEATURES)
        + config.hour_embedding
        + config.day_embedding
        + config.month_embedding
    )


def parameter_layout(config):
    """Canonical (name, shape) order of every learnable array. The layout, and so
    the flat parameter vector length, depends on the config only."""
    H, F = config.hidden, feature_width(config)
    inner = FEED_FORWARD_FACTOR * H
    layout = [
        ("embed.hour", (HOURS_PER_DAY, config.hour_embedding)),
        ("embed.day", (DAYS_PER_MONTH, config.day_embedding)),
        ("embed.month", (MONTHS_PER_YEAR, config.month_embedding)),
        ("input.weight", (F, H)),
        ("input.bias", (H,)),
        ("position", (config.window, H)),
    ]
    for block in range(config.blocks):
        prefix = f"block{block}"
        layout += [
            (f"{prefix}.query", (H, H)),
            (f"{prefix}.key", (H, H)),
            (f"{prefix}.value", (H, H)),
            (f"{prefix}.output.weight", (H, H)),
            (f"{prefix}.output.bias", (H,)),
            (f"{prefix}.ff1.weight", (H, inner)),
            (f"{prefix}.ff1.bias", (inner,)),
            (f"{prefix}.ff2.weight", (inner, H)),
            (f"{prefix}.ff2.bias", (H,)),
        ]
    layout += [
        ("head.mean.weight", (H, N_TARGETS)),
        ("head.mean.bias", (N_TARGETS,)),
        ("head.median.weight", (H, N_TARGETS)),
        ("head.median.bias", (N_TARGETS,)),
        ("head.increments.weight", (H, N_TARGETS * N_INCREMENTS)),
        ("head.increments.bias", (N_TARGETS * N_INCREMENTS,)),
    ]
    return layout


def init_parameters(config, seed):
    """Matrices are drawn from N(0, 1/fan_in) with fan_in the number of rows,
    vectors start at zero."""
    rng = np.random.default_rng(seed)
    parameters = OrderedDict()
    for name, shape in parameter_layout(config):
        if len(shape) == 1:
            parameters[name] = np.zeros(shape)
        else:
            parameters[name] = rng.standard_normal(shape) / np.sqrt(shape[0])
    return parameters


def elu(x):
    return np.where(x > 0, x, np.expm1(np.minimum(x, 0.0)))


def elu_derivative(x):
    return np.where(x > 0, 1.0, np.exp(np.minimum(x, 0.0)))


def _split_heads(x, heads):
    B, T, H = x.shape
    return x.reshape(B, T, heads, H // heads).transpose(0, 2, 1, 3)


def _merge_heads(x):
    B, heads, T, d = x.shape
    return x.transpose(0, 2, 1, 3).reshape(B, T, heads * d)


def _matmul_backward(inputs, grad_outputs):
    """Weight gradient of outputs = inputs @ W, summed over leading axes."""
    return inputs.reshape(-1, inputs.shape[-1]).T @ grad_outputs.reshape(
        -1, grad_outputs.shape[-1]
    )


def embed_inputs(parameters, targets, covariates, fingerprints):
    hour = fingerprints[..., 0] - 1
    day = fingerprints[..., 1] - 1
    month = fingerprints[..., 2] - 1
    return np.concatenate(
        [
            targets,
            covariates,
            parameters["embed.hour"][hour],
            parameters["embed.day"][day],
            parameters["embed.month"][month],
        ],
        axis=-1,
    )


def forward(parameters, config, targets, covariates, fingerprints, dropout=None):
    """Runs the network on standardized inputs.

    Arguments:
        parameters {OrderedDict} -- Arrays keyed as in parameter_layout.
        config {ModelConfig}
        targets {ndarray} -- (B, T, C) standardized frequencies.
        covariates {ndarray} -- (B, T, 7) standardized covariate features.
        fingerprints {ndarray} -- (B, T, 3) integer hour, day and month indexes.

    Keyword Arguments:
        dropout {list} -- Per-block keep masks (B, T, inner) already scaled by
            1 / (1 - rate), or None at inference. (default: {None})

    Returns:
        tuple -- (mean (B, C), quantiles (B, C, 7), cache for backward)
    """
    heads = config.heads
    scale = 1.0 / np.sqrt(config.head_width)

    inputs = embed_inputs(parameters, targets, covariates, fingerprints)
    state = inputs @ parameters["input.weight"] + parameters["input.bias"]
    state = state + parameters["position"]

    blocks = []
    for block in range(config.blocks):
        prefix = f"block{block}"
        query = _split_heads(state @ parameters[f"{prefix}.query"], heads)
        key = _split_heads(state @ parameters[f"{prefix}.key"], heads)
        value = _split_heads(state @ parameters[f"{prefix}.value"], heads)

        scores = query @ key.transpose(0, 1, 3, 2) * scale
        scores = scores - scores.max(axis=-1, keepdims=True)
        attention = np.exp(scores)
        attention /= attention.sum(axis=-1, keepdims=True)

        mixed = _merge_heads(attention @ value)
        attended = (
            state
            + mixed @ parameters[f"{prefix}.output.weight"]
            + parameters[f"{prefix}.output.bias"]
        )

        inner = attended @ parameters[f"{prefix}.ff1.weight"] + parameters[f"{prefix}.ff1.bias"]
        activated = elu(inner)
        if dropout is not None:
            activated = activated * dropout[block]
        output = (
            attended
            + activated @ parameters[f"{prefix}.ff2.weight"]
            + parameters[f"{prefix}.ff2.bias"]
        )

        blocks.append(
            {
                "state": state,
                "query": query,
                "key": key,
                "value": value,
                "attention": attention,
                "mixed": mixed,
                "attended": attended,
                "inner": inner,
                "activated": activated,
            }
        )
        state = output

    final = state[:, -1, :]
    mean = final @ parameters["head.mean.weight"] + parameters["head.mean.bias"]
    median = final @ parameters["head.median.weight"] + parameters["head.median.bias"]
    raw = (
        final @ parameters["head.increments.weight"] + parameters["head.increments.bias"]
    ).reshape(-1, N_TARGETS, N_INCREMENTS)
    quantiles = decode_quantile_array(median, raw)

    cache = {
        "inputs": inputs,
        "fingerprints": fingerprints,
        "blocks": blocks,
        "final": final,
        "raw": raw,
        "shape": state.shape,
        "dropout": dropout,
    }
    return mean, quantiles, cache


def backward(parameters, config, cache, grad_mean, grad_quantiles):
    """Reverse-mode pass of forward().

    Arguments:
        grad_mean {ndarray} -- dL/d mean, (B, C).
        grad_quantiles {ndarray} -- dL/d quantiles, (B, C, 7).

    Returns:
        OrderedDict -- gradients keyed and shaped like parameters.
    """
    heads = config.heads
    scale = 1.0 / np.sqrt(config.head_width)
    grads = OrderedDict((name, np.zeros_like(value)) for name, value in parameters.items())

    final = cache["final"]
    grad_median, grad_raw = decode_quantile_backward(grad_quantiles, cache["raw"])
    grad_raw = grad_raw.reshape(len(final), -1)

    grads["head.mean.weight"] = final.T @ grad_mean
    grads["head.mean.bias"] = grad_mean.sum(axis=0)
    grads["head.median.weight"] = final.T @ grad_median
    grads["head.median.bias"] = grad_median.sum(axis=0)
    grads["head.increments.weight"] = final.T @ grad_raw
    grads["head.increments.bias"] = grad_raw.sum(axis=0)

    grad_final = (
        grad_mean @ parameters["head.mean.weight"].T
        + grad_median @ parameters["head.median.weight"].T
        + grad_raw @ parameters["head.increments.weight"].T
    )
    grad_state = np.zeros(cache["shape"])
    grad_state[:, -1, :] = grad_final

    for block in reversed(range(config.blocks)):
        prefix = f"block{block}"
        saved = cache["blocks"][block]

        # output = attended + activated @ ff2 + b2
        grads[f"{prefix}.ff2.weight"] = _matmul_backward(saved["activated"], grad_state)
        grads[f"{prefix}.ff2.bias"] = grad_state.sum(axis=(0, 1))
        grad_activated = grad_state @ parameters[f"{prefix}.ff2.weight"].T
        if cache["dropout"] is not None:
            grad_activated = grad_activated * cache["dropout"][block]
        grad_inner = grad_activated * elu_derivative(saved["inner"])
        grads[f"{prefix}.ff1.weight"] = _matmul_backward(saved["attended"], grad_inner)
        grads[f"{prefix}.ff1.bias"] = grad_inner.sum(axis=(0, 1))
        grad_attended = grad_state + grad_inner @ parameters[f"{prefix}.ff1.weight"].T

        # attended = state + mixed @ Wo + bo
        grads[f"{prefix}.output.weight"] = _matmul_backward(saved["mixed"], grad_attended)
        grads[f"{prefix}.output.bias"] = grad_attended.sum(axis=(0, 1))
        grad_mixed = _split_heads(
            grad_attended @ parameters[f"{prefix}.output.weight"].T, heads
        )

        attention = saved["attention"]
        grad_attention = grad_mixed @ saved["value"].transpose(0, 1, 3, 2)
        grad_value = attention.transpose(0, 1, 3, 2) @ grad_mixed
        grad_scores = attention * (
            grad_attention - (grad_attention * attention).sum(axis=-1, keepdims=True)
        )
        grad_scores = grad_scores * scale
        grad_query = _merge_heads(grad_scores @ saved["key"])
        grad_key = _merge_heads(grad_scores.transpose(0, 1, 3, 2) @ saved["query"])
        grad_value = _merge_heads(grad_value)

        state = saved["state"]
        grads[f"{prefix}.query"] = _matmul_backward(state, grad_query)
        grads[f"{prefix}.key"] = _matmul_backward(state, grad_key)
        grads[f"{prefix}.value"] = _matmul_backward(state, grad_value)
        grad_state = (
            grad_attended
            + grad_query @ parameters[f"{prefix}.query"].T
            + grad_key @ parameters[f"{prefix}.key"].T
            + grad_value @ parameters[f"{prefix}.value"].T
        )

    grads["position"] = grad_state.sum(axis=0)
    grads["input.weight"] = _matmul_backward(cache["inputs"], grad_state)
    grads["input.bias"] = grad_state.sum(axis=(0, 1))
    grad_inputs = grad_state @ parameters["input.weight"].T

    offset = N_TARGETS + len(COVARIATE_FEATURES)
    fingerprints = cache["fingerprints"]
    for column, name in enumerate(CALENDAR_TABLES):
        width = parameters[name].shape[1]
        rows = fingerprints[..., column].reshape(-1) - 1
        np.add.at(
            grads[name], rows, grad_inputs[..., offset : offset + width].reshape(-1, width)
        )
        offset += width

    return grads
