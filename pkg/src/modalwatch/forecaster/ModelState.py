from collections import OrderedDict

import numpy as np

from ..timeseries.NormStats import NormStats
from .network import parameter_layout


class ModelState:
    """A forecaster: config, learnable parameters in canonical order, the embedded
    normalization statistics and the training log."""

    def __init__(self, config, parameters, stats=None, log=None):
        self.config = config
        self.parameters = OrderedDict()
        for name, shape in parameter_layout(config):
            value = np.array(parameters[name], dtype=np.float64)
            if value.shape != shape:
                raise ValueError(f"Parameter {name} has shape {value.shape}, expected {shape}.")
            value.setflags(write=False)
            self.parameters[name] = value
        self.stats = stats or NormStats.identity()
        self.log = list(log or [])

    @property
    def size(self):
        return sum(value.size for value in self.parameters.values())

    def flat(self):
        """All parameters as one vector in canonical order."""
        return np.concatenate([value.reshape(-1) for value in self.parameters.values()])

    def unflatten(self, vector):
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.size,):
            raise ValueError(f"Expected a vector of {self.size} parameters.")
        arrays, offset = OrderedDict(), 0
        for name, shape in parameter_layout(self.config):
            count = int(np.prod(shape))
            arrays[name] = vector[offset : offset + count].reshape(shape)
            offset += count
        return arrays

    def with_flat(self, vector):
        return self.__class__(self.config, self.unflatten(vector), self.stats, self.log)

    def with_parameters(self, parameters):
        return self.__class__(self.config, parameters, self.stats, self.log)

    @property
    def best_validation_loss(self):
        losses = [entry["validation_loss"] for entry in self.log if "validation_loss" in entry]
        return min(losses) if losses else None

    @property
    def training_range(self):
        """(start, end) timestamps of the data the model saw, end exclusive."""
        for entry in reversed(self.log):
            if "trained_from" in entry:
                return entry["trained_from"], entry["trained_to"]
        return None

    def __eq__(self, other):
        if not isinstance(other, ModelState):
            return NotImplemented
        return (
            self.config == other.config
            and self.stats == other.stats
            and self.log == other.log
            and np.array_equal(self.flat(), other.flat())
        )

    def __repr__(self):
        return f"<ModelState parameters={self.size} window={self.config.window}>"
