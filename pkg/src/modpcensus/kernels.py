"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``MODPCENSUS_PURE=1`` in the environment to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"

if not os.environ.get("MODPCENSUS_PURE"):
    try:
        from . import _kernels as _ext
    except ImportError:
        _ext = None
else:
    _ext = None

if _ext is not None:
    charpoly_mod = _ext.charpoly_mod
    resultant_mod = _ext.resultant_mod
    BACKEND = "cython"
else:
    charpoly_mod = _pykernels.charpoly_mod
    resultant_mod = _pykernels.resultant_mod

__all__ = ["BACKEND", "charpoly_mod", "resultant_mod"]
