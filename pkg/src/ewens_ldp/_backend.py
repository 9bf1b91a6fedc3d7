"""Pick the compiled kernels when importable, else the numpy fallback.

Set ``EWENS_LDP_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py as pure

compiled = None
if os.environ.get("EWENS_LDP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

kernels = compiled if compiled is not None else pure
NAME = "cython" if compiled is not None else "python"
