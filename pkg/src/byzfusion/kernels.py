"""Backend selection for the inner loops.

The compiled extension is used when it imports; set ``BYZFUSION_PURE_PYTHON=1``
to force the numpy fallback.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:
    _ckernels = None
else:
    BACKENDS["compiled"] = _ckernels

if _ckernels is not None and os.environ.get("BYZFUSION_PURE_PYTHON") != "1":
    BACKEND = "compiled"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]
simulate_block = _impl.simulate_block
log_error_probability = _impl.log_error_probability
