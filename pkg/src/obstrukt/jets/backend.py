"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set OBSTRUKT_JET_BACKEND to "numpy" or "cython" to force a choice (the latter
raises if the extension was not built).
"""

import os

from . import _kernels_py

_choice = os.environ.get("OBSTRUKT_JET_BACKEND", "auto")

if _choice == "numpy":
    _impl = _kernels_py
elif _choice == "cython":
    from . import _speedups as _impl
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND_NAME = _impl.BACKEND_NAME
mul = _impl.mul


def available_backends():
    names = ["numpy"]
    try:
        from . import _speedups  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    return names
