"""Systematic network coding over erasure line networks."""

try:
    from sncvf._core import *  # noqa: F401,F403
    from sncvf._core import __doc__  # noqa: F401
except ImportError:  # in-tree build: module sits on PYTHONPATH unpackaged
    from _core import *  # noqa: F401,F403
