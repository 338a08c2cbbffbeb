import os

from cleo import Command

from ..config import CONFIG_ENV, config_section, load_config
from ..exceptions import ConfigurationNotFound


class CanOverrideConfig(Command):
    """Adds the --config option and resolves the monitoring configuration module
    it names."""

    def __init__(self):
        super().__init__()
        self.add_option()

    def add_option(self):
        # 8 is the required value flag in cleo
        self._config.add_option(
            "config",
            "C",
            8,
            description=(
                f"The monitoring configuration module. Defaults to the {CONFIG_ENV} "
                "env variable, then 'config/monitoring'."
            ),
        )

    def config_module(self):
        """The configuration module, or None when none was asked for and the
        default module does not exist."""
        path = self.option("config")
        try:
            return load_config(path)
        except ConfigurationNotFound:
            if path or os.getenv(CONFIG_ENV):
                raise
            return None

    def settings(self, module, section):
        return config_section(module, section) if module is not None else {}
