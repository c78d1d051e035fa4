"""Symmetric-polynomial calculus, log-minor matrix functionals and their
Monte-Carlo concavity certification."""

try:
    from ._hessk import *  # noqa: F401,F403
    from ._hessk import __doc__ as _core_doc  # noqa: F401
except ImportError:  # dev tree: extension built next to this package
    from _hessk import *  # noqa: F401,F403

__version__ = "0.1.0"
