"""Energy-aware slice activation simulator with bandit agents."""

try:
    from ._ranslice import *  # noqa: F401,F403
except ImportError:  # plain build tree: the extension sits on PYTHONPATH
    from _ranslice import *  # noqa: F401,F403

__version__ = "0.1.0"
