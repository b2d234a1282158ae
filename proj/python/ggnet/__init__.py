"""Directed Gaussian graphical model learning."""

try:
    from ._ggnet import *  # noqa: F401,F403
    from ._ggnet import __doc__ as _doc
except ImportError:
    from _ggnet import *  # noqa: F401,F403
    from _ggnet import __doc__ as _doc

__doc__ = _doc
