"""Semantic network model of sign-language comprehension.

Spreading activation over a weighted concept graph, an attention game that
redistributes a fixed energy budget, comparison baselines and evaluation
helpers. The heavy lifting happens in the compiled ``_core`` extension.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
