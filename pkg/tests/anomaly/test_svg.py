import unittest

import pytest

from src.modalwatch.anomaly import plot_data, run_sliding
from src.modalwatch.anomaly.reports import read_plot_data
from src.modalwatch.anomaly.svg import render_svg
from src.modalwatch.forecaster import ModelConfig, init
from src.modalwatch.timeseries import compute_stats
from tests.utils import synthetic_series

pytest.importorskip("matplotlib")


class TestRenderSvg(unittest.TestCase):
    def test_same_data_same_bytes(self):
        series = synthetic_series(hours=30)
        config = ModelConfig(
            window=8, hidden=8, heads=1, hour_embedding=2, day_embedding=2, month_embedding=2
        )
        records = run_sliding(init(config, 1, stats=compute_stats(series)), series)
        frames = {
            name[len("plot_") : -len(".csv")]: read_plot_data(text)
            for name, text in plot_data(records).items()
        }

        svg = render_svg(frames)
        self.assertTrue(svg.lstrip().startswith(b"<?xml"))
        self.assertEqual(render_svg(frames), svg)
