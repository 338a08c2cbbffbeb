"""Gap handling: restores the hourly grid and fills short runs of missing values."""

import logging

import numpy as np

from ..exceptions import InvalidConfiguration, SeriesTooShort
from .channels import N_FIELDS, N_TARGETS, WIND_DIR
from .Series import Series

LINEAR = "linear"
CARRY_FORWARD = "carry-forward"
DROP_WINDOW = "drop-window"

POLICIES = (LINEAR, CARRY_FORWARD, DROP_WINDOW)

DEFAULT_POLICY = LINEAR
DEFAULT_LIMIT = 3

DIRECTION_COLUMN = N_TARGETS + WIND_DIR


def missing_runs(missing):
    """Yields (start, stop) of every run of True in a boolean vector."""
    edges = np.diff(np.concatenate([[0], missing.astype(np.int8), [0]]))
    return zip(np.flatnonzero(edges == 1), np.flatnonzero(edges == -1))


def _fill_run(column, start, stop, policy, circular):
    left, right = column[start - 1], column[stop]
    if policy == CARRY_FORWARD:
        column[start:stop] = left
        return

    fraction = np.arange(1, stop - start + 1) / (stop - start + 1)
    if circular:
        # interpolate the unit vector so 350 -> 10 passes through 0, not 180
        a, b = np.deg2rad(left), np.deg2rad(right)
        cos = np.cos(a) + (np.cos(b) - np.cos(a)) * fraction
        sin = np.sin(a) + (np.sin(b) - np.sin(a)) * fraction
        degrees = np.mod(np.rad2deg(np.arctan2(sin, cos)), 360.0)
        column[start:stop] = np.where(degrees >= 360.0, 0.0, degrees)
    else:
        column[start:stop] = left + (right - left) * fraction


def regularize(series):
    """Inserts all-missing rows so the series sits on a gapless 1-hour grid."""
    if series.is_regular:
        return series

    hours = np.arange(series.hours[0], series.hours[-1] + 1, dtype=np.int64)
    positions = series.hours - series.hours[0]
    values = np.full((len(hours), N_FIELDS), np.nan)
    synthetic = np.zeros((len(hours), N_FIELDS), dtype=bool)
    values[positions] = series.values
    synthetic[positions] = series.synthetic
    return Series(
        hours,
        values[:, :N_TARGETS],
        values[:, N_TARGETS:],
        synthetic=synthetic,
        provenance=series.provenance,
    )


def fill_gaps(series, policy=DEFAULT_POLICY, limit=DEFAULT_LIMIT):
    """Restores the hourly grid and fills interior gaps no longer than limit hours.

    Gaps longer than the limit, and gaps touching either end of the series, stay
    missing so that build_windows skips every window overlapping them. Filled
    values are flagged synthetic. Applying fill_gaps twice equals applying it once.

    Arguments:
        series {Series} -- A sorted series.

    Keyword Arguments:
        policy {string} -- linear, carry-forward or drop-window. (default: {"linear"})
        limit {int} -- The longest gap, in hours, that gets filled. (default: {3})

    Returns:
        Series
    """
    if policy not in POLICIES:
        raise InvalidConfiguration(
            f"Unknown gap policy '{policy}', expected one of {', '.join(POLICIES)}."
        )
    if limit < 1:
        raise InvalidConfiguration(f"Gap limit must be at least 1 hour, got {limit}.")
    if len(series) < 2:
        raise SeriesTooShort("Gap filling needs at least 2 samples.")

    regular = regularize(series)
    inserted = len(regular) - len(series)
    if policy == DROP_WINDOW:
        return regular

    values = regular.values.copy()
    synthetic = regular.synthetic.copy()
    filled = 0
    for column in range(N_FIELDS):
        for start, stop in missing_runs(np.isnan(values[:, column])):
            if start == 0 or stop == len(values) or stop - start > limit:
                continue
            _fill_run(
                values[:, column], start, stop, policy, column == DIRECTION_COLUMN
            )
            synthetic[start:stop, column] = True
            filled += stop - start

    logging.getLogger("modalwatch.timeseries.gaps").info(
        f"Filled {filled} missing values ({inserted} hours inserted) with policy {policy}",
        extra={"filled": filled, "inserted": inserted, "policy": policy, "limit": limit},
    )
    return Series(
        regular.hours,
        values[:, :N_TARGETS],
        values[:, N_TARGETS:],
        synthetic=synthetic,
        provenance=regular.provenance,
    )
