"""Kernel backend selection.

The compiled extension (dampedgpe._kernels, Cython) is preferred; the
pure-numpy implementation in dampedgpe._kernels_py is the fallback.  Set
DAMPEDGPE_PURE_PYTHON=1 to force the fallback, e.g. for the backend
benchmark or debugging.
"""

import os

if os.environ.get("DAMPEDGPE_PURE_PYTHON"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"


def backend_name() -> str:
    """Name of the active stepping backend: 'cython' or 'python'."""
    return BACKEND
