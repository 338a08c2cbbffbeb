import unittest

import numpy as np

from src.modalwatch.exceptions import EmptyBatch, InvalidConfiguration, WindowMismatch
from src.modalwatch.forecaster import (
    ForecastDistribution,
    ModelConfig,
    batch_loss,
    forward,
    gradients,
    init,
    pinball_loss,
    predict,
)
from src.modalwatch.forecaster import network
from src.modalwatch.forecaster.quantiles import QUANTILE_LEVELS
from src.modalwatch.timeseries import build_windows, compute_stats
from tests.utils import make_series, synthetic_series

SMALL = dict(window=8, hidden=8, heads=1, hour_embedding=2, day_embedding=2, month_embedding=2)


def small_config(**options):
    return ModelConfig(**{**SMALL, **options})


class TestInit(unittest.TestCase):
    def test_same_seed_same_parameters(self):
        config = small_config()
        np.testing.assert_array_equal(init(config, 3).flat(), init(config, 3).flat())

    def test_different_seeds_differ(self):
        config = small_config()
        self.assertFalse(np.array_equal(init(config, 3).flat(), init(config, 4).flat()))

    def test_size_depends_on_the_config_only(self):
        config = small_config()
        expected = sum(int(np.prod(shape)) for _, shape in network.parameter_layout(config))
        self.assertEqual(init(config, 1).size, expected)
        self.assertEqual(init(config, 2).size, expected)
        self.assertGreater(init(small_config(blocks=2), 1).size, expected)

    def test_invalid_configs(self):
        with self.assertRaises(InvalidConfiguration):
            small_config(heads=3)
        with self.assertRaises(InvalidConfiguration):
            small_config(window=1)
        with self.assertRaises(InvalidConfiguration):
            small_config(dropout=1.0)
        with self.assertRaises(InvalidConfiguration):
            small_config(kernel=3)
        for option in ("learning_rate", "dropout", "mean_weight"):
            for value in ("0.01", None, True, float("nan")):
                with self.assertRaises(InvalidConfiguration):
                    small_config(**{option: value})

    def test_config_is_immutable(self):
        config = small_config()
        with self.assertRaises(AttributeError):
            config.window = 12
        self.assertEqual(config.replace(window=12).window, 12)
        self.assertEqual(ModelConfig.hydrate(config.serialize()), config)


class TestForward(unittest.TestCase):
    def setUp(self):
        self.series = synthetic_series(hours=120)
        self.model = init(small_config(), 5, stats=compute_stats(self.series))
        self.windows = build_windows(self.series, 8)

    def test_distribution_shape_and_order(self):
        dist = forward(self.model, self.windows[0])

        self.assertIsInstance(dist, ForecastDistribution)
        self.assertEqual(dist.mean.shape, (5,))
        self.assertEqual(dist.quantiles.shape, (5, 7))
        self.assertTrue(np.all(np.isfinite(dist.quantiles)))
        self.assertTrue(dist.is_monotone())

    def test_deterministic(self):
        self.assertEqual(forward(self.model, self.windows[4]), forward(self.model, self.windows[4]))

    def test_batching_does_not_change_predictions(self):
        means, quantiles = predict(self.model, self.windows, batch_size=7)
        whole_means, whole_quantiles = predict(self.model, self.windows, batch_size=1000)
        np.testing.assert_allclose(means, whole_means, rtol=0, atol=1e-12)
        np.testing.assert_allclose(quantiles, whole_quantiles, rtol=0, atol=1e-12)

    def test_many_random_models_stay_monotone(self):
        violations = 0
        for seed in range(100):
            model = init(small_config(), seed, stats=self.model.stats)
            parameters = {
                name: value * 4.0 for name, value in model.parameters.items()
            }
            _, quantiles = predict(model.with_parameters(parameters), self.windows)
            violations += int(np.sum(np.diff(quantiles, axis=-1) < 0))
        self.assertEqual(violations, 0)

    def test_collapsed_increments(self):
        parameters = dict(self.model.parameters)
        parameters["head.increments.weight"] = np.zeros_like(parameters["head.increments.weight"])
        parameters["head.increments.bias"] = np.full_like(parameters["head.increments.bias"], -1000.0)
        dist = forward(self.model.with_parameters(parameters), self.windows[0])

        for level in QUANTILE_LEVELS:
            np.testing.assert_array_equal(dist.quantile(level), dist.median)

    def test_window_length_mismatch(self):
        model = init(small_config(window=6), 5, stats=self.model.stats)
        with self.assertRaises(WindowMismatch):
            forward(model, self.windows[0])


def exact_model(label):
    """A model whose every head outputs `label`, with identity statistics."""
    model = init(small_config(), 0)
    parameters = dict(model.parameters)
    for head in ("mean", "median", "increments"):
        parameters[f"head.{head}.weight"] = np.zeros_like(parameters[f"head.{head}.weight"])
    parameters["head.mean.bias"] = np.array(label)
    parameters["head.median.bias"] = np.array(label)
    parameters["head.increments.bias"] = np.full(30, -1000.0)
    return model.with_parameters(parameters)


class TestBatchLoss(unittest.TestCase):
    def setUp(self):
        self.series = synthetic_series(hours=80)
        self.model = init(small_config(), 9, stats=compute_stats(self.series))
        self.windows = build_windows(self.series, 8)

    def test_exact_prediction_has_zero_loss(self):
        label = [1.0, 1.1, 3.3, 4.1, 5.9]
        windows = build_windows(make_series(np.tile(label, (20, 1))), 8)
        self.assertEqual(batch_loss(exact_model(label), windows), 0.0)

    def test_single_window_by_hand(self):
        model = init(small_config(), 2)
        window = build_windows(make_series(1.0 + np.arange(50.0).reshape(10, 5) / 50), 8)[0]
        dist = forward(model, window)

        expected = 0.0
        for c in range(5):
            y = window.label[c]
            expected += sum(
                pinball_loss(y, dist.quantiles[c, i], level)
                for i, level in enumerate(QUANTILE_LEVELS)
            )
            expected += (y - dist.mean[c]) ** 2
        self.assertAlmostEqual(batch_loss(model, [window]), expected / 5, places=12)

    def test_mean_and_order_invariance(self):
        loss = batch_loss(self.model, self.windows)
        self.assertGreater(loss, 0.0)
        self.assertAlmostEqual(batch_loss(self.model, self.windows * 2), loss, places=12)
        self.assertAlmostEqual(batch_loss(self.model, self.windows[::-1]), loss, places=12)

    def test_empty_batch(self):
        with self.assertRaises(EmptyBatch):
            batch_loss(self.model, [])
        with self.assertRaises(EmptyBatch):
            gradients(self.model, [])


class TestGradients(unittest.TestCase):
    def setUp(self):
        series = synthetic_series(hours=60, seed=4)
        self.windows = build_windows(series, 8)[:4]
        stats = compute_stats(series)
        config = small_config()

        # pick an initialization with no quantile within reach of a label, so that
        # finite differences never straddle a pinball kink
        for seed in range(50):
            self.model = init(config, seed, stats=stats)
            _, quantiles = predict(self.model, self.windows)
            labels = np.array([window.label for window in self.windows])
            residuals = stats.standardize_targets(labels)[:, :, None] - (
                (quantiles - stats.target_mean[:, None]) / stats.target_std[:, None]
            )
            if np.abs(residuals).min() > 1e-3:
                break
        else:
            self.fail("No initialization keeps every quantile away from the labels.")

    def test_matches_central_differences(self):
        analytic = gradients(self.model, self.windows)
        flat = self.model.flat()
        h = 1e-4
        numeric = np.zeros_like(flat)
        for index in range(len(flat)):
            up, down = flat.copy(), flat.copy()
            up[index] += h
            down[index] -= h
            numeric[index] = (
                batch_loss(self.model.with_flat(up), self.windows)
                - batch_loss(self.model.with_flat(down), self.windows)
            ) / (2 * h)

        # near-zero entries are dominated by the rounding noise of the differences
        np.testing.assert_allclose(analytic, numeric, rtol=1e-4, atol=1e-7)

    def test_masked_heads_get_no_gradient(self):
        grads = self.model.unflatten(gradients(self.model, self.windows, channels=[0]))

        self.assertTrue(np.all(grads["head.mean.weight"][:, 1:] == 0))
        self.assertTrue(np.all(grads["head.median.bias"][1:] == 0))
        self.assertTrue(np.all(grads["head.increments.weight"][:, 6:] == 0))
        self.assertTrue(np.any(grads["head.mean.weight"][:, 0] != 0))

    def test_unused_embedding_rows_get_no_gradient(self):
        grads = self.model.unflatten(gradients(self.model, self.windows))
        used = {int(hour) - 1 for window in self.windows for hour in window.fingerprints[:, 0]}
        unused = [row for row in range(24) if row not in used]

        self.assertTrue(unused)
        self.assertTrue(np.all(grads["embed.hour"][unused] == 0))
