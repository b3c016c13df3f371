"""Frenet apparatus, Bertrand partner curves and their harmonicity."""

import logging

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
