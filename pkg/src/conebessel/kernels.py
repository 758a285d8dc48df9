"""Backend selection for the hot loops.

The compiled extension is preferred; set ``CONE_BESSEL_PURE=1`` to force the
numpy implementation.  ``BACKEND`` names the active one.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("CONE_BESSEL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels

mc_accumulate = _impl.mc_accumulate
poly2_eval = _impl.poly2_eval

__all__ = ["BACKEND", "mc_accumulate", "poly2_eval"]
