import importlib.util
import os
import pydoc

from .exceptions import ConfigurationNotFound, InvalidConfiguration

CONFIG_ENV = "MODALWATCH_CONFIG_PATH"
SECTIONS = ("MODEL", "TRAINING", "DETECTOR", "GAPS")


def load_config(config_path=None):
    """Load monitoring configuration from given configuration path (dotted or not).
    If no path is provided:
        1. try to load from MODALWATCH_CONFIG_PATH environment variable
        2. else try to load from default config_path: config/monitoring

    A path naming an existing .py file, with or without the extension, is loaded
    directly from disk; anything else is resolved as a dotted module.
    """
    selected_config_path = (
        config_path or os.getenv(CONFIG_ENV, None) or "config/monitoring"
    )

    file_path = selected_config_path
    if not file_path.endswith(".py") and not os.path.isfile(file_path):
        file_path += ".py"

    if os.path.isfile(file_path):
        spec = importlib.util.spec_from_file_location("modalwatch_user_config", file_path)
        config_module = importlib.util.module_from_spec(spec)
        try:
            spec.loader.exec_module(config_module)
        except Exception as e:
            raise InvalidConfiguration(
                f"Configuration file {selected_config_path} could not be loaded: {e}"
            )
        return config_module

    # format path as python module if needed
    if selected_config_path.endswith(".py"):
        selected_config_path = selected_config_path[: -len(".py")]
    selected_config_path = selected_config_path.replace("/", ".").replace("\\", ".")

    config_module = pydoc.locate(selected_config_path)
    if config_module is None:
        raise ConfigurationNotFound(
            f"Monitoring configuration file has not been found in {selected_config_path}."
        )
    return config_module


def config_section(config_module, section):
    """Returns a copy of one configuration dict of a loaded config module.

    Arguments:
        config_module {module} -- The module returned by load_config.
        section {string} -- One of MODEL, TRAINING, DETECTOR, GAPS.

    Returns:
        dict
    """
    if section not in SECTIONS:
        raise InvalidConfiguration(f"Unknown configuration section '{section}'.")

    values = getattr(config_module, section, None) or {}
    if not isinstance(values, dict):
        raise InvalidConfiguration(f"Configuration section {section} must be a dict.")
    return dict(values)


def layer(*sources):
    """Merges configuration dicts left to right, skipping None values so that
    unset command line flags never clobber file values."""
    merged = {}
    for source in sources:
        for key, value in (source or {}).items():
            if value is not None:
                merged[key] = value
    return merged
