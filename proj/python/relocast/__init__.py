"""Solar irradiation forecasting with relocatable MLP models."""

from ._relocast import *  # noqa: F401,F403
from ._relocast import __doc__  # noqa: F401

__version__ = "0.1.0"
