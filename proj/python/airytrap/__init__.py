"""Resonances of a delta trap under uniform acceleration."""

from ._airytrap import *  # noqa: F401,F403
from ._airytrap import __doc__  # noqa: F401

__version__ = "0.1.0"
