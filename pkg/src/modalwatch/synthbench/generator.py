"""Synthetic monitoring data with injected, labeled anomalies."""

import logging

import numpy as np

from ..timeseries.calendar import HOURS_PER_DAY
from ..timeseries.channels import TARGET_CHANNELS
from ..timeseries.Series import Series
from .Labels import SEPARATOR, Labels

DAYS_PER_YEAR = 365.25

logger = logging.getLogger("modalwatch.synthbench.generator")


def _streams(seed):
    """Independent generators for temperature, target noise, weather and wind
    direction, so that changing one component never shifts the others."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(4)]


def temperature_anomaly(scenario, hours, rng):
    """Daily and seasonal cosines peaking at the configured hour and day, plus
    Gaussian noise, in degrees relative to the mean."""
    settings = scenario.temperature
    stamps = hours.astype("datetime64[h]")
    hour_of_day = (hours % HOURS_PER_DAY).astype(np.float64)
    day_of_year = (stamps - stamps.astype("datetime64[Y]").astype("datetime64[h]")).astype(
        np.float64
    ) / HOURS_PER_DAY

    daily = settings["daily_amplitude"] * np.cos(
        2 * np.pi * (hour_of_day - settings["daily_peak_hour"]) / HOURS_PER_DAY
    )
    seasonal = settings["seasonal_amplitude"] * np.cos(
        2 * np.pi * (day_of_year - settings["seasonal_peak_day"]) / DAYS_PER_YEAR
    )
    return daily + seasonal + settings["noise"] * rng.standard_normal(len(hours))


def weather(scenario, anomaly, rng, direction_rng):
    """Covariates consistent with the temperature: humidity falls as it warms,
    sparse rain, gamma-distributed wind with peaks above the average and a
    random-walk wind direction."""
    settings = scenario.weather
    n = len(anomaly)
    temperature = scenario.temperature["mean"] + anomaly

    humidity = np.clip(
        settings["humidity_mean"]
        + settings["humidity_per_degree"] * anomaly
        + settings["humidity_noise"] * rng.standard_normal(n),
        0.0,
        100.0,
    )
    wet = rng.random(n) < settings["rain_probability"]
    rain = np.where(wet, rng.exponential(1.0, n) * settings["rain_mean"], 0.0)
    wind_average = rng.gamma(4.0, 1.0, n) * settings["wind_mean"] / 4.0
    wind_peak = wind_average * (1.0 + rng.gamma(2.0, 1.0, n) * settings["gust_factor"] / 2.0)

    walk = direction_rng.uniform(0.0, 360.0) + np.cumsum(
        settings["direction_step"] * direction_rng.standard_normal(n)
    )
    direction = np.mod(walk, 360.0)
    direction = np.where(direction >= 360.0, 0.0, direction)

    return np.stack([temperature, rain, humidity, wind_average, wind_peak, direction], axis=1)


def clean_targets(scenario, anomaly, rng):
    baselines = np.array(scenario.baselines)
    couplings = np.array(scenario.couplings)
    noise = np.array(scenario.noise)
    z = rng.standard_normal((len(anomaly), len(TARGET_CHANNELS)))
    return baselines + couplings * anomaly[:, None] + noise * z


def inject(scenario, targets):
    """Adds every event to a copy of the clean targets and labels the hours.

    Returns:
        tuple -- (targets, per-hour event ids)
    """
    targets = targets.copy()
    noise = np.array(scenario.noise)
    labels = [[] for _ in range(len(targets))]
    for event in scenario.events:
        columns = [TARGET_CHANNELS.index(channel) for channel in event.channels]
        offset = event.direction * event.magnitude * noise[columns]
        for label, start, stop in event.spans(scenario.hours):
            targets[start:stop, columns] += offset
            for hour in range(start, stop):
                labels[hour].append(label)
    return targets, [SEPARATOR.join(sorted(ids)) for ids in labels]


def generate(scenario):
    """Generates a labeled synthetic series.

    The output depends on the scenario only, seed included. Hours outside every
    event span are identical to the generation of the same scenario without events.

    Arguments:
        scenario {Scenario}

    Returns:
        tuple -- (Series, Labels)
    """
    temperature_rng, target_rng, weather_rng, direction_rng = _streams(scenario.seed)
    hours = scenario.start_hour + np.arange(scenario.hours, dtype=np.int64)

    anomaly = temperature_anomaly(scenario, hours, temperature_rng)
    covariates = weather(scenario, anomaly, weather_rng, direction_rng)
    targets, event_ids = inject(scenario, clean_targets(scenario, anomaly, target_rng))

    series = Series(
        hours,
        targets,
        covariates,
        provenance=f"synthetic:{scenario.name} seed={scenario.seed}",
    )
    labels = Labels(hours, event_ids)
    logger.info(
        f"Generated {scenario.hours} hours with {len(scenario.events)} events",
        extra={
            "scenario": scenario.name,
            "seed": scenario.seed,
            "hours": scenario.hours,
            "anomalous_hours": int(labels.is_anomaly.sum()),
        },
    )
    return series, labels
