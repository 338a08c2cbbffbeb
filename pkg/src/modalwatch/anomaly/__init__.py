from .AnomalyRecord import AnomalyRecord
from .ChannelVerdict import ChannelVerdict
from .DetectorConfig import DetectorConfig
from .Episode import Episode, find_episodes
from .reports import parse_report, plot_data, to_report_csv
from .rules import detect_point, deviation, weighted_score
from .SlidingDetector import SlidingDetector, run_sliding
