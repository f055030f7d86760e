"""Backend selection for the hot loops.

The compiled extension is used when it imports cleanly; setting
AFFINE_CELLS_PURE=1 forces the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("AFFINE_CELLS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"

t_right_mul_simple = _impl.t_right_mul_simple
t_accumulate = _impl.t_accumulate
kl_column = _impl.kl_column
