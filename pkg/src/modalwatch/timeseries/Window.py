import numpy as np

from ..exceptions import InvalidConfiguration
from .calendar import from_epoch_hour


class Window:
    """T consecutive input samples followed by the label sample at position T+1.

    The arrays are read-only views into the source series.
    """

    __slots__ = ("hours", "targets", "covariates", "fingerprints", "label", "label_hour")

    def __init__(self, hours, targets, covariates, fingerprints, label, label_hour):
        self.hours = hours
        self.targets = targets
        self.covariates = covariates
        self.fingerprints = fingerprints
        self.label = label
        self.label_hour = int(label_hour)

    def __len__(self):
        return len(self.hours)

    @property
    def label_timestamp(self):
        return from_epoch_hour(self.label_hour)

    def __repr__(self):
        return f"<Window T={len(self)} label={self.label_timestamp.to_iso8601_string()}>"


def valid_window_starts(series, T):
    """Indexes s such that rows s..s+T-1 are complete, contiguous inputs and row
    s+T carries a genuine, complete label one hour after the last input."""
    if T < 2:
        raise InvalidConfiguration(f"Window length must be at least 2, got {T}.")

    n = len(series)
    if n < T + 1:
        return np.zeros(0, dtype=np.int64)

    input_ok = series.mask.all(axis=1)
    n_targets = series.targets.shape[1]
    label_ok = series.mask[:, :n_targets].all(axis=1) & ~series.synthetic[
        :, :n_targets
    ].any(axis=1)

    bad = np.concatenate([[0], np.cumsum(~input_ok)])
    starts = np.arange(n - T)
    inputs_complete = (bad[starts + T] - bad[starts]) == 0
    contiguous = (series.hours[starts + T] - series.hours[starts]) == T
    return starts[inputs_complete & contiguous & label_ok[starts + T]]


def build_windows(series, T):
    """Builds every valid (input block, label) window with stride 1, ordered by
    label timestamp. A series without T+1 valid consecutive samples yields an
    empty list.

    Arguments:
        series {Series} -- A gap-filled series.
        T {int} -- The input block length.

    Returns:
        list -- of Window
    """
    fingerprints = series.fingerprints
    windows = []
    for start in valid_window_starts(series, T):
        stop = start + T
        windows.append(
            Window(
                series.hours[start:stop],
                series.targets[start:stop],
                series.covariates[start:stop],
                fingerprints[start:stop],
                series.targets[stop],
                series.hours[stop],
            )
        )
    return windows
