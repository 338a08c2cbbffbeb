import json
import logging
import os

from ..exceptions import (
    ConfigurationError,
    InvalidConfiguration,
    MalformedRow,
    ModalWatchException,
)
from ..timeseries.calendar import to_epoch_hour
from ..timeseries.channels import N_TARGETS
from ..timeseries.ingest import parse_csv, parse_timestamp
from .CanOverrideConfig import CanOverrideConfig
from .CanOverrideOptionsDefault import CanOverrideOptionsDefault

USAGE_ERROR = 2
RUNTIME_ERROR = 1


class Command(CanOverrideOptionsDefault, CanOverrideConfig):
    def wrap_handle(self, args, io, command):
        handler = self._attach_log_handler(io)
        try:
            return super().wrap_handle(args, io, command) or 0
        except (ConfigurationError, FileNotFoundError) as e:
            self.line_error(str(e), style="error")
            return USAGE_ERROR
        except ModalWatchException as e:
            self.line_error(str(e), style="error")
            return RUNTIME_ERROR
        finally:
            if handler:
                logging.getLogger("modalwatch").removeHandler(handler)

    def _attach_log_handler(self, io):
        if not io.is_verbose():
            return None
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger = logging.getLogger("modalwatch")
        logger.setLevel(logging.DEBUG if io.is_very_verbose() else logging.INFO)
        logger.addHandler(handler)
        return handler

    def integer_option(self, name):
        value = self.option(name)
        if value is None:
            return None
        try:
            return int(value)
        except ValueError:
            raise InvalidConfiguration(f"--{name} expects an integer, got '{value}'.")

    def float_option(self, name):
        value = self.option(name)
        if value is None:
            return None
        try:
            return float(value)
        except ValueError:
            raise InvalidConfiguration(f"--{name} expects a number, got '{value}'.")

    def timestamp(self, value, name):
        """Parses an ISO-8601 command line or configuration date. A bare date means
        midnight UTC."""
        if value is None:
            return None
        value = str(value)
        if "T" not in value:
            value += "T00:00:00Z"
        try:
            return parse_timestamp(value)
        except MalformedRow as e:
            raise InvalidConfiguration(f"--{name}: {e}")

    def check_range(self, start, end):
        if start is not None and end is not None and to_epoch_hour(end) <= to_epoch_hour(start):
            raise InvalidConfiguration("--to must come after --from, ranges are [from, to).")

    def read_text(self, path):
        with open(path, encoding="utf-8") as handle:
            return handle.read()

    def read_series(self, path):
        return parse_csv(self.read_text(path), provenance=path)

    def read_json(self, path):
        try:
            return json.loads(self.read_text(path))
        except ValueError as e:
            raise InvalidConfiguration(f"'{path}' is not valid JSON: {e}")

    def run_divisors(self, directory):
        """The per-channel divisors a detect run scored with, from its
        effective_config.json, or ones when the run left none."""
        path = os.path.join(directory, "effective_config.json")
        if not os.path.isfile(path):
            self.comment(
                "No effective_config.json next to the report, channels are ranked unweighted."
            )
            return [1.0] * N_TARGETS
        return self.read_json(path).get("divisors") or [1.0] * N_TARGETS
