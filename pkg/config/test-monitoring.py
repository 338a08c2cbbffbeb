""" Test Monitoring Settings """

from dotenv import load_dotenv

load_dotenv(".env")

MODEL = {
    "window": 8,
    "hidden": 8,
    "heads": 1,
    "hour_embedding": 2,
    "day_embedding": 2,
    "month_embedding": 2,
    "learning_rate": 1e-2,
    "batch_size": 32,
    "max_epochs": 2,
    "patience": 2,
    "seed": 7,
}

TRAINING = {"split": [0.8, 0.2]}

DETECTOR = {"percentile": 99, "window": 8, "batch_size": 64}

GAPS = {"policy": "linear", "limit": 3}
