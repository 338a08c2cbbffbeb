import math

from ..exceptions import InvalidConfiguration
from .quantiles import QUANTILE_LEVELS


class ModelConfig:
    """Architecture and training hyperparameters of the quantile forecaster.

    These defaults are declared, not recovered from any published model.
    """

    defaults = {
        "window": 96,
        "hidden": 16,
        "heads": 2,
        "blocks": 1,
        "hour_embedding": 4,
        "day_embedding": 4,
        "month_embedding": 3,
        "dropout": 0.0,
        "learning_rate": 1e-3,
        "batch_size": 64,
        "max_epochs": 30,
        "patience": 5,
        "mean_weight": 1.0,
        "seed": 0,
    }

    quantile_levels = QUANTILE_LEVELS

    def __init__(self, **options):
        unknown = set(options) - set(self.defaults)
        if unknown:
            raise InvalidConfiguration(
                f"Unknown model option(s): {', '.join(sorted(unknown))}."
            )
        values = {**self.defaults, **options}
        for key, value in values.items():
            object.__setattr__(self, key, value)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("ModelConfig is immutable, use replace()")

    def _validate(self):
        for key in (
            "window",
            "hidden",
            "heads",
            "blocks",
            "hour_embedding",
            "day_embedding",
            "month_embedding",
            "batch_size",
            "max_epochs",
            "seed",
        ):
            if not isinstance(getattr(self, key), int) or isinstance(
                getattr(self, key), bool
            ):
                raise InvalidConfiguration(f"Model option '{key}' must be an integer.")
        for key in ("learning_rate", "dropout", "mean_weight"):
            value = getattr(self, key)
            if (
                not isinstance(value, (int, float))
                or isinstance(value, bool)
                or not math.isfinite(value)
            ):
                raise InvalidConfiguration(f"Model option '{key}' must be a finite number.")

        if self.window < 2:
            raise InvalidConfiguration(f"window must be at least 2, got {self.window}.")
        if self.hidden < 2:
            raise InvalidConfiguration(f"hidden must be at least 2, got {self.hidden}.")
        if self.heads < 1 or self.hidden % self.heads:
            raise InvalidConfiguration(
                f"heads ({self.heads}) must be a positive divisor of hidden ({self.hidden})."
            )
        if self.blocks < 1:
            raise InvalidConfiguration("At least one attention block is required.")
        if min(self.hour_embedding, self.day_embedding, self.month_embedding) < 1:
            raise InvalidConfiguration("Embedding sizes must be positive.")
        if not 0 <= self.dropout < 1:
            raise InvalidConfiguration(f"dropout must lie in [0, 1), got {self.dropout}.")
        if not self.learning_rate > 0:
            raise InvalidConfiguration("learning_rate must be positive.")
        if self.batch_size < 1:
            raise InvalidConfiguration("batch_size must be positive.")
        if self.max_epochs < 0:
            raise InvalidConfiguration("max_epochs must not be negative.")
        if not isinstance(self.patience, int) or self.patience < 1:
            raise InvalidConfiguration("patience must be a positive integer.")
        if self.mean_weight < 0:
            raise InvalidConfiguration("mean_weight must not be negative.")
        levels = self.quantile_levels
        if any(not 0 < q < 1 for q in levels) or any(
            a >= b for a, b in zip(levels, levels[1:])
        ):
            raise InvalidConfiguration("Quantile levels must increase strictly in (0, 1).")

    @property
    def head_width(self):
        return self.hidden // self.heads

    def replace(self, **options):
        return self.__class__(**{**self.serialize(), **options})

    def serialize(self):
        return {key: getattr(self, key) for key in self.defaults}

    @classmethod
    def hydrate(cls, data):
        return cls(**data)

    def __eq__(self, other):
        if not isinstance(other, ModelConfig):
            return NotImplemented
        return self.serialize() == other.serialize()

    def __repr__(self):
        return f"<ModelConfig {self.serialize()}>"
