"""Select the compiled kernels when available, else the pure-Python ones.

Set ``SUMREG_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as python_kernels

compiled_kernels = None
if not os.environ.get("SUMREG_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels or python_kernels
BACKEND = kernels.NAME
