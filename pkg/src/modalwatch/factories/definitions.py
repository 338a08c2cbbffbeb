"""Default fake-data recipes for the configuration objects of the package."""

from ..anomaly.DetectorConfig import DetectorConfig, supported_percentiles
from ..forecaster.ModelConfig import ModelConfig
from ..synthbench.AnomalyEvent import MULTI_CHANNEL_TRANSIENT, STEP_SHIFT, AnomalyEvent
from ..synthbench.Scenario import Scenario
from ..timeseries.channels import TARGET_CHANNELS
from .Factory import Factory


def anomaly_event(faker):
    return {
        "id": faker.slug(),
        "kind": STEP_SHIFT,
        "start": faker.random_int(0, 200),
        "duration": faker.random_int(2, 12),
        "magnitude": faker.random_int(30, 60) / 10,
        "channels": [faker.random_element(TARGET_CHANNELS)],
    }


def transient_event(faker):
    return {
        **anomaly_event(faker),
        "kind": MULTI_CHANNEL_TRANSIENT,
        "channels": list(TARGET_CHANNELS),
    }


def scenario(faker):
    return {
        "name": faker.slug(),
        "hours": 24 * 30,
        "seed": faker.random_int(0, 9999),
    }


def model_config(faker):
    return {
        "window": faker.random_int(4, 12),
        "hidden": 4 * faker.random_int(1, 3),
        "heads": faker.random_element((1, 2)),
        "max_epochs": 1,
        "seed": faker.random_int(0, 9999),
    }


def detector_config(faker):
    return {"percentile": faker.random_element(supported_percentiles())}


def register_defaults():
    Factory.register(AnomalyEvent, anomaly_event)
    Factory.register(AnomalyEvent, transient_event, name="transient")
    Factory.register(Scenario, scenario)
    Factory.register(ModelConfig, model_config)
    Factory.register(DetectorConfig, detector_config)
