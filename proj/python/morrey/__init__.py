"""Morrey norms, weak Morrey quasi-norms and maximal-function probes for radial functions."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, criterion_count  # noqa: F401
