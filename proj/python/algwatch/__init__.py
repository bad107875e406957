"""Two-hop algebraic watchdog for wireless network coding."""

from ._algwatch import *  # noqa: F401,F403
from ._algwatch import Error, ValidationError, DecodeError, IoError  # noqa: F401

__version__ = "0.1.0"
