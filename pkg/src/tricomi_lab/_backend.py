"""Select the compiled kernel module if it is importable."""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("TRICOMI_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = _kernels_py
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
