"""Selects the compiled extension or the numpy fallback at import time.

Set CRITLUE_BACKEND=python to force the fallback, CRITLUE_BACKEND=cython to
require the extension (ImportError if it was not built).  The default tries
the extension first.
"""

import os

_requested = os.environ.get("CRITLUE_BACKEND", "auto").lower()

if _requested == "python":
    from critlue import _kernels_py as _impl

    BACKEND = "python"
elif _requested == "cython":
    from critlue import _kernels as _impl

    BACKEND = "cython"
else:
    try:
        from critlue import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        from critlue import _kernels_py as _impl

        BACKEND = "python"

cg_halt = _impl.cg_halt
cg_halt_gram = _impl.cg_halt_gram
laguerre_pair = _impl.laguerre_pair


def available_backends():
    """Names of the kernel implementations importable in this build."""
    out = ["python"]
    try:
        from critlue import _kernels  # noqa: F401

        out.insert(0, "cython")
    except ImportError:
        pass
    return out
