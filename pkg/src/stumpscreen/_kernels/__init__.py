"""Split-scan kernels: compiled extension with a pure-NumPy fallback.

The compiled kernel is preferred when the extension module is importable.
Set ``STUMPSCREEN_BACKEND=python`` to force the NumPy fallback or
``STUMPSCREEN_BACKEND=compiled`` to require the extension (raises if it is
not built).  ``benchmarks/backend_bench.py`` compares the two.
"""

import os

from . import numpy_backend

try:
    from . import _split_cy
except ImportError:
    _split_cy = None

COMPILED_AVAILABLE = _split_cy is not None

_requested = os.environ.get("STUMPSCREEN_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "compiled", "python"):
    raise ValueError(
        f"STUMPSCREEN_BACKEND must be 'auto', 'compiled' or 'python', got {_requested!r}"
    )
if _requested == "compiled" and not COMPILED_AVAILABLE:
    raise ImportError(
        "STUMPSCREEN_BACKEND=compiled but the stumpscreen._kernels._split_cy "
        "extension is not built; reinstall the package or use the python backend"
    )

if _requested == "python" or not COMPILED_AVAILABLE:
    ACTIVE_BACKEND = "python"
    best_split = numpy_backend.best_split
else:
    ACTIVE_BACKEND = "compiled"
    best_split = _split_cy.best_split

__all__ = ["ACTIVE_BACKEND", "COMPILED_AVAILABLE", "best_split", "numpy_backend"]
