"""Kernel backend selection.

The compiled extension is used when available unless GERMSPLIT_PURE is
set; `kernels` is rebindable so benchmarks and tests can compare both
implementations in one process via `set_backend`.
"""

import os

from . import _kernels_py


def _load_compiled():
    try:
        from . import _kernels

        return _kernels
    except ImportError:
        return None


if os.environ.get("GERMSPLIT_PURE"):
    kernels = _kernels_py
else:
    kernels = _load_compiled() or _kernels_py

BACKENDS = ("auto", "pure", "compiled")


def set_backend(name):
    """Rebind the active kernels; returns the resulting backend name."""
    global kernels
    if name == "pure":
        kernels = _kernels_py
    elif name == "compiled":
        compiled = _load_compiled()
        if compiled is None:
            raise RuntimeError("compiled kernels are not available")
        kernels = compiled
    elif name == "auto":
        kernels = _load_compiled() or _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    return kernels.BACKEND_NAME


def backend_name():
    return kernels.BACKEND_NAME
