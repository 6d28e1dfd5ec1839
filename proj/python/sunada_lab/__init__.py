"""Isospectral line-bundle laboratory: Gassmann pairs, magnetic graph
Laplacians, transplantation, and quantum-equivalence checks."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # extension built out-of-tree and put on PYTHONPATH
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
