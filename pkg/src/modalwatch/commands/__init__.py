from .DetectCommand import DetectCommand
from .EvalCommand import EvalCommand
from .ReportCommand import ReportCommand
from .SynthCommand import SynthCommand
from .TrainCommand import TrainCommand
