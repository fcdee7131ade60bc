"""Anosov subgroup toolkit: python bindings for the C++ core."""

from anosov._core import *  # noqa: F401,F403
from anosov._core import __version__  # noqa: F401
