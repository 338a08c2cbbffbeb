import numpy as np

from .channels import COVARIATE_FEATURES, N_TARGETS, TARGET_CHANNELS
from .features import covariate_features


class NormStats:
    """Per-channel mean and sample standard deviation of the targets and of the
    encoded covariate features, taken from training data only."""

    def __init__(self, target_mean, target_std, covariate_mean, covariate_std):
        self.target_mean = np.array(target_mean, dtype=np.float64)
        self.target_std = np.array(target_std, dtype=np.float64)
        self.covariate_mean = np.array(covariate_mean, dtype=np.float64)
        self.covariate_std = np.array(covariate_std, dtype=np.float64)
        for array in (
            self.target_mean,
            self.target_std,
            self.covariate_mean,
            self.covariate_std,
        ):
            array.setflags(write=False)

    @classmethod
    def identity(cls):
        return cls(
            np.zeros(N_TARGETS),
            np.ones(N_TARGETS),
            np.zeros(len(COVARIATE_FEATURES)),
            np.ones(len(COVARIATE_FEATURES)),
        )

    def standardize_targets(self, targets):
        return (np.asarray(targets) - self.target_mean) / self.target_std

    def destandardize_targets(self, values):
        return np.asarray(values) * self.target_std + self.target_mean

    def standardize_covariates(self, covariates):
        """Standardizes raw covariates (..., 6) into (..., 7) model features."""
        return (covariate_features(covariates) - self.covariate_mean) / self.covariate_std

    @property
    def mean_frequencies(self):
        return self.target_mean

    def serialize(self):
        return {
            "target_mean": self.target_mean.tolist(),
            "target_std": self.target_std.tolist(),
            "covariate_mean": self.covariate_mean.tolist(),
            "covariate_std": self.covariate_std.tolist(),
            "target_channels": list(TARGET_CHANNELS),
            "covariate_features": list(COVARIATE_FEATURES),
        }

    @classmethod
    def hydrate(cls, data):
        return cls(
            data["target_mean"],
            data["target_std"],
            data["covariate_mean"],
            data["covariate_std"],
        )

    def __eq__(self, other):
        if not isinstance(other, NormStats):
            return NotImplemented
        return all(
            np.array_equal(a, b)
            for a, b in zip(
                (self.target_mean, self.target_std, self.covariate_mean, self.covariate_std),
                (other.target_mean, other.target_std, other.covariate_mean, other.covariate_std),
            )
        )
