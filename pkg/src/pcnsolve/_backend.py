"""Kernel selection: compiled core when importable, pure Python otherwise.

Set ``PCNSOLVE_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernel_py


def _load() -> ModuleType:
    if os.environ.get("PCNSOLVE_KERNEL", "").lower() == "python":
        return _kernel_py
    try:
        from . import _kernel
    except ImportError:
        return _kernel_py
    return _kernel


kernel = _load()


def available() -> dict[str, ModuleType]:
    out = {"python": _kernel_py}
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        out["cython"] = _kernel
    return out
