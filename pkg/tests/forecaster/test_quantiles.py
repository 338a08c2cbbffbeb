import math
import unittest

import numpy as np

from src.modalwatch.exceptions import InvalidPercentile
from src.modalwatch.forecaster import QUANTILE_LEVELS, decode_quantiles, pinball_loss
from src.modalwatch.forecaster.quantiles import (
    decode_quantile_array,
    level_index,
    pinball_gradient,
)


class TestDecodeQuantiles(unittest.TestCase):
    def test_unit_steps(self):
        unit = math.log(math.e - 1.0)
        quantiles = decode_quantiles(0.0, [unit] * 6)
        for value, expected in zip(quantiles, (-3, -2, -1, 0, 1, 2, 3)):
            self.assertAlmostEqual(value, expected, places=12)

    def test_vanishing_steps_collapse_to_the_median(self):
        self.assertEqual(decode_quantiles(1.25, [-1000.0] * 6), (1.25,) * 7)

    def test_median_is_kept(self):
        quantiles = decode_quantiles(0.3, [0.1, -2.0, 4.0, 1.0, 0.0, -1.0])
        self.assertEqual(quantiles[QUANTILE_LEVELS.index(0.50)], 0.3)

    def test_random_inputs_are_always_sorted(self):
        rng = np.random.default_rng(11)
        medians = rng.normal(0.0, 10.0, size=10_000)
        raw = rng.normal(0.0, 5.0, size=(10_000, 6))
        quantiles = decode_quantile_array(medians, raw)

        self.assertEqual(quantiles.shape, (10_000, 7))
        self.assertTrue(np.all(np.diff(quantiles, axis=1) >= 0))


class TestPinballLoss(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(pinball_loss(2.0, 2.0, 0.5), 0.0)
        self.assertAlmostEqual(pinball_loss(1.0, 0.0, 0.99), 0.99, places=15)
        self.assertAlmostEqual(pinball_loss(-1.0, 0.0, 0.10), 0.90, places=15)

    def test_never_negative(self):
        rng = np.random.default_rng(3)
        y, predicted = rng.normal(size=(2, 1000))
        for level in QUANTILE_LEVELS:
            self.assertTrue(np.all(pinball_loss(y, predicted, level) >= 0))

    def test_gradient_takes_the_lower_branch_at_the_kink(self):
        self.assertAlmostEqual(float(pinball_gradient(1.0, 1.0, 0.9)), 0.1)
        self.assertAlmostEqual(float(pinball_gradient(2.0, 1.0, 0.9)), -0.9)
        self.assertAlmostEqual(float(pinball_gradient(0.0, 1.0, 0.9)), 0.1)

    def test_level_index(self):
        self.assertEqual(level_index(0.99), 6)
        self.assertEqual(level_index(1 - 0.99), 0)
        with self.assertRaises(InvalidPercentile):
            level_index(0.95)
