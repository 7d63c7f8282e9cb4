"""Kernel selection.

The compiled extension is used when it imports; ``QUADCUT_PURE_PYTHON=1``
forces the numpy fallback.
"""

from __future__ import annotations

import os

from . import _pure

pure = _pure

try:
    if os.environ.get("QUADCUT_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python kernels requested")
    from . import _kernels as compiled
except ImportError:
    compiled = None

kernels = compiled if compiled is not None else _pure
BACKEND = "compiled" if compiled is not None else "python"
