from .definitions import register_defaults
from .Factory import Factory

register_defaults()
