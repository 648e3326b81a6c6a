"""Tweet sentiment, emotion, topic and controversy analytics (C++ core)."""

from ._tweetscope import *  # noqa: F401,F403
from ._tweetscope import __doc__  # noqa: F401

__version__ = "0.1.0"
