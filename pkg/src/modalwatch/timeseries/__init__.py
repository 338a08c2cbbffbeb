from .calendar import fingerprint
from .channels import COVARIATE_CHANNELS, CSV_COLUMNS, TARGET_CHANNELS
from .gaps import fill_gaps
from .ingest import parse_csv, to_csv
from .MonitoringSample import MonitoringSample
from .NormStats import NormStats
from .Series import Series
from .stats import compute_stats
from .Window import Window, build_windows
