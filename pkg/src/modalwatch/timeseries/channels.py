"""Canonical channel layout of a monitoring record."""

TARGET_CHANNELS = ("f1", "f2", "f3", "f4", "f5")

COVARIATE_CHANNELS = (
    "temp_c",
    "rain_mm",
    "humidity_pct",
    "wind_avg_ms",
    "wind_peak_ms",
    "wind_dir_deg",
)

CSV_COLUMNS = ("timestamp",) + TARGET_CHANNELS + COVARIATE_CHANNELS

UNITS = {
    "f1": "Hz",
    "f2": "Hz",
    "f3": "Hz",
    "f4": "Hz",
    "f5": "Hz",
    "temp_c": "degC",
    "rain_mm": "mm/h",
    "humidity_pct": "%",
    "wind_avg_ms": "m/s",
    "wind_peak_ms": "m/s",
    "wind_dir_deg": "deg",
}

# wind direction is circular and enters the model as (cos, sin)
COVARIATE_FEATURES = COVARIATE_CHANNELS[:-1] + ("wind_dir_cos", "wind_dir_sin")

RAIN, HUMIDITY, WIND_AVG, WIND_PEAK, WIND_DIR = 1, 2, 3, 4, 5

N_TARGETS = len(TARGET_CHANNELS)
N_COVARIATES = len(COVARIATE_CHANNELS)
N_FIELDS = N_TARGETS + N_COVARIATES
