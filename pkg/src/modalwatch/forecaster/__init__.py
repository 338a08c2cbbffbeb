from .ForecastDistribution import ForecastDistribution
from .model import batch_loss, forward, gradients, init, predict
from .ModelConfig import ModelConfig
from .ModelFile import load, save
from .ModelState import ModelState
from .quantiles import QUANTILE_LEVELS, decode_quantiles, pinball_loss
from .Trainer import Trainer, train
