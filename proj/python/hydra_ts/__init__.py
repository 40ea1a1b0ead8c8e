# SPDX-License-Identifier: Apache-2.0
"""Python surface of the hydra toolkit.

Everything is implemented in the C++ extension; this package re-exports it.
"""

try:
    from hydra_ts._hydra import *  # noqa: F401,F403  (installed layout)
    from hydra_ts import _hydra as _impl
except ImportError:  # build-tree layout: the module sits on PYTHONPATH
    from _hydra import *  # noqa: F401,F403
    import _hydra as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
