"""Python bindings for the fraclamb solver library."""

from ._fraclamb import *  # noqa: F401,F403
from ._fraclamb import __doc__  # noqa: F401
