"""Detection metrics against synthetic ground truth."""

import math

import numpy as np

from ..collection import RecordCollection
from ..exceptions import InsufficientData, InvalidConfiguration, TimelineMismatch
from ..timeseries.calendar import format_epoch_hour
from ..timeseries.channels import N_TARGETS, TARGET_CHANNELS
from .EvalReport import EvalReport, EventOutcome

DEFAULT_TOLERANCE = 2
DEFAULT_ALARM_RATE = 0.025
SWEEP_POINTS = 11
# channels whose weighted deviation reaches this share of the largest one at the
# peak of a detection are reported as driving it
DRIVING_SHARE = 0.5


def _check_timeline(hours, labels):
    known = np.isin(hours, labels.hours)
    if not known.all():
        missing = format_epoch_hour(int(hours[~known][0]))
        raise TimelineMismatch(
            f"The report covers {missing}, which the labels do not; "
            "records and labels must come from the same timeline."
        )


def driving_channels(record, divisors):
    """The violated channels of a record whose deviation, divided by the channel
    divisor, reaches DRIVING_SHARE of the largest one."""
    weighted = np.array(
        [verdict.deviation if verdict.violated else 0.0 for verdict in record.verdicts]
    ) / np.asarray(divisors, dtype=np.float64)
    if not weighted.any():
        return record.violated_channels
    return tuple(
        channel
        for channel, value in zip(TARGET_CHANNELS, weighted)
        if value > 0 and value >= DRIVING_SHARE * weighted.max()
    )


def alarm_threshold(records, rate=DEFAULT_ALARM_RATE):
    """The smallest score threshold at which at most `rate` of the scored hours
    of a clean stretch would still be flagged.

    Arguments:
        records {list} -- AnomalyRecord of a stretch without events.

    Keyword Arguments:
        rate {float} -- Allowed share of flagged hours, in (0, 1). (default: {0.025})

    Raises:
        InvalidConfiguration: when rate is outside (0, 1).
        InsufficientData: when no record is scored.

    Returns:
        float
    """
    if isinstance(rate, bool) or not isinstance(rate, (int, float)) or not 0 < rate < 1:
        raise InvalidConfiguration(f"The alarm rate must lie in (0, 1), got {rate!r}.")
    scored = RecordCollection(records).scored()
    if scored.is_empty():
        raise InsufficientData("The calibration stretch has no scored hour.")

    allowed = int(math.floor(rate * scored.count()))
    scores = np.sort(scored.anomalous().values("score"))[::-1]
    if len(scores) <= allowed:
        return 0.0
    return float(np.nextafter(scores[allowed], np.inf))


def evaluate(records, labels, tolerance=DEFAULT_TOLERANCE, threshold=0.0, divisors=None):
    """Scores detections against labeled events.

    An event is hit when a scored record within `tolerance` hours of its span is
    anomalous with a score of at least `threshold`. Its channels are the driving
    channels of the highest-scoring of those records. Flags outside every
    tolerated span are false positives; the false-positive rate divides them by
    the scored hours outside the spans. Only events overlapping the period of the
    records count, or every event when there are no records.

    Arguments:
        records {list} -- AnomalyRecord ordered by time.
        labels {Labels}

    Keyword Arguments:
        tolerance {int} -- Matching tolerance in hours. (default: {2})
        threshold {float} -- Minimum score of a flag. (default: {0.0})
        divisors {sequence} -- Per-channel deviation divisors ranking the channels,
            the training mean frequencies of the detect run. (default: {ones})

    Raises:
        TimelineMismatch: when a record falls outside the labeled timeline.

    Returns:
        EvalReport
    """
    if not isinstance(tolerance, int) or tolerance < 0:
        raise InvalidConfiguration(f"Tolerance must be a non-negative integer, got {tolerance}.")
    divisors = [1.0] * N_TARGETS if divisors is None else divisors

    hours = np.array([record.hour for record in records], dtype=np.int64)
    _check_timeline(hours, labels)
    scored = np.array([record.scored for record in records], dtype=bool)
    scores = np.array([record.score for record in records], dtype=np.float64)
    flagged = scored & np.array([record.anomalous for record in records], dtype=bool)
    flagged &= scores >= threshold

    spans = labels.spans()
    if len(hours):
        first, last = hours.min(), hours.max()
        spans = {key: (a, b) for key, (a, b) in spans.items() if a <= last and b > first}

    covered = np.zeros(len(records), dtype=bool)
    outcomes = []
    for event_id, (start, stop) in spans.items():
        near = (hours >= start - tolerance) & (hours <= stop - 1 + tolerance)
        covered |= near
        matches = np.flatnonzero(near & flagged)
        if not len(matches):
            outcomes.append(EventOutcome(event_id, start, stop, hit=False))
            continue
        peak = matches[int(np.argmax(scores[matches]))]
        outcomes.append(
            EventOutcome(
                event_id,
                start,
                stop,
                hit=True,
                channels=driving_channels(records[peak], divisors),
                first_hour=int(hours[matches[0]]),
                peak_hour=int(hours[peak]),
            )
        )

    notes = []
    flags = int(flagged.sum())
    true_flags = int((flagged & covered).sum())
    clean_hours = int((scored & ~covered).sum())

    if flags:
        precision = true_flags / flags
    else:
        precision = 1.0
        notes.append("no flags raised: precision is reported as 1 by convention")
    if outcomes:
        recall = sum(outcome.hit for outcome in outcomes) / len(outcomes)
    else:
        recall = 1.0
        notes.append("no labeled events in the evaluated period: recall is reported as 1")
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    false_positive_rate = (flags - true_flags) / clean_hours if clean_hours else 0.0

    return EvalReport(
        precision=float(precision),
        recall=float(recall),
        f1=float(f1),
        false_positive_rate=float(false_positive_rate),
        tolerance=tolerance,
        threshold=float(threshold),
        events=outcomes,
        flags=flags,
        true_flags=true_flags,
        clean_hours=clean_hours,
        notes=notes,
    )


def sweep_thresholds(records, points=SWEEP_POINTS):
    """Zero plus the quantiles of the anomalous scores, ascending and unique."""
    scores = RecordCollection(records).scored().anomalous().values("score")
    grid = [0.0]
    if len(scores):
        grid += np.quantile(scores, np.linspace(0.0, 1.0, points)).tolist()
    return sorted(set(float(value) for value in grid))


def sweep(records, labels, tolerance=DEFAULT_TOLERANCE, thresholds=None):
    """Metrics over a grid of thresholds. Recall never increases along the grid.

    Returns:
        list -- of dicts with threshold, precision, recall, f1 and false_positive_rate.
    """
    thresholds = sweep_thresholds(records) if thresholds is None else sorted(thresholds)
    rows = []
    for threshold in thresholds:
        report = evaluate(records, labels, tolerance=tolerance, threshold=threshold)
        rows.append(
            {
                "threshold": report.threshold,
                "precision": report.precision,
                "recall": report.recall,
                "f1": report.f1,
                "false_positive_rate": report.false_positive_rate,
            }
        )
    return rows
