"""Kernel selection: compiled Gray-code scanner when available, pure-Python
fallback otherwise.  Set TRI_FORCE_PY_KERNEL=1 to force the fallback."""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("TRI_FORCE_PY_KERNEL"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

COMPILED = bool(getattr(_impl, "COMPILED", False))
scan_block = _impl.scan_block
scan_block_py = _kernels_py.scan_block


def active_kernel_name() -> str:
    return "compiled" if COMPILED else "python"
