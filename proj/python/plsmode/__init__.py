"""Secrecy outage capacity and transmission mode selection for multi-user
multi-antenna downlinks with a passive eavesdropper.

The heavy lifting lives in the compiled extension `_plsmode`; this package
re-exports its surface. When running against a CMake build tree (instead of
an installed wheel) the extension sits next to the build products, so fall
back to a top-level import.
"""

try:
    from ._plsmode import *  # noqa: F401,F403
    from ._plsmode import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _plsmode import *  # noqa: F401,F403
    from _plsmode import __version__  # noqa: F401
