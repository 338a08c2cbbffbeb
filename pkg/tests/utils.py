import os
import shutil
import tempfile

import numpy as np

from src.modalwatch.synthbench import Scenario, generate
from src.modalwatch.timeseries import Series
from src.modalwatch.timeseries.calendar import to_epoch_hour
from src.modalwatch.timeseries.ingest import parse_timestamp

START = "2016-01-01T00:00:00Z"
START_HOUR = to_epoch_hour(parse_timestamp(START))

HEADER = (
    "timestamp,f1,f2,f3,f4,f5,temp_c,rain_mm,humidity_pct,wind_avg_ms,wind_peak_ms,wind_dir_deg"
)

COVARIATES = [15.0, 0.0, 70.0, 3.0, 4.5, 90.0]


def row(timestamp, targets=(1.0, 1.1, 3.3, 4.1, 5.9), covariates=COVARIATES):
    cells = ["" if value is None else repr(value) for value in list(targets) + list(covariates)]
    return ",".join([timestamp] + cells)


def make_series(targets, start_hour=START_HOUR, covariates=None, hours=None):
    """A series from an (N, 5) target array, constant covariates by default."""
    targets = np.asarray(targets, dtype=np.float64).reshape(-1, 5)
    if covariates is None:
        covariates = np.tile(COVARIATES, (len(targets), 1))
    if hours is None:
        hours = start_hour + np.arange(len(targets))
    return Series(hours, targets, covariates)


def synthetic_series(hours=400, seed=1, **options):
    series, _ = generate(Scenario(hours=hours, seed=seed, **options))
    return series


class TemporaryDirectory:
    """Mixin giving each test its own scratch directory in self.directory."""

    def setUp(self):
        super().setUp()
        self.directory = tempfile.mkdtemp(prefix="modalwatch-")

    def tearDown(self):
        shutil.rmtree(self.directory, ignore_errors=True)
        super().tearDown()

    def path(self, *names):
        return os.path.join(self.directory, *names)
