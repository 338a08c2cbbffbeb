import numpy as np

from .channels import WIND_DIR


def covariate_features(covariates):
    """Encodes raw covariates (..., 6) as model features (..., 7): the five linear
    covariates followed by cos and sin of the wind direction."""
    covariates = np.asarray(covariates, dtype=np.float64)
    radians = np.deg2rad(covariates[..., WIND_DIR])
    return np.concatenate(
        [
            covariates[..., :WIND_DIR],
            np.cos(radians)[..., None],
            np.sin(radians)[..., None],
        ],
        axis=-1,
    )
