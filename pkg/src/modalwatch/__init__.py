"""Anomaly detection on the natural frequencies of monitored structures."""

__version__ = "0.1.0"
