from .AnomalyEvent import AnomalyEvent
from .EvalReport import EvalReport, EventOutcome
from .evaluation import alarm_threshold, evaluate, sweep
from .generator import generate
from .Labels import Labels
from .Scenario import Scenario
