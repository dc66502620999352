"""Kernel backend selection.

The compiled extension ``reachobs._ckernels`` is preferred when it was
built; otherwise the pure-Python kernels are used.  Both produce
bit-identical output.  Set ``REACHOBS_KERNELS=python`` (or ``=c``) to
force a backend; forcing ``c`` raises if the extension is missing.
"""

from __future__ import annotations

import os

_requested = os.environ.get("REACHOBS_KERNELS", "").strip().lower()

if _requested not in ("", "c", "python"):
    raise ImportError(
        f"invalid REACHOBS_KERNELS value {_requested!r}; expected 'c' or 'python'"
    )

if _requested == "python":
    from . import _pykernels as _impl

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        KERNEL_BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise ImportError(
                "REACHOBS_KERNELS=c but the compiled extension is not built"
            ) from None
        from . import _pykernels as _impl

        KERNEL_BACKEND = "python"

mat_mul = _impl.mat_mul
rref_decompose = _impl.rref_decompose


def kernel_backend() -> str:
    """Name of the active kernel backend: ``"c"`` or ``"python"``."""
    return KERNEL_BACKEND
