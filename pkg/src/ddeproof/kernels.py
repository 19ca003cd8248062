"""Backend selection for the interval kernels.

``DDEPROOF_KERNELS`` may be ``auto`` (default: compiled if importable),
``compiled`` (fail if the extension is missing) or ``python``.
"""

import os

_choice = os.environ.get("DDEPROOF_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "compiled", "python"):
    raise ImportError(f"DDEPROOF_KERNELS must be auto, compiled or python, got {_choice!r}")

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = None
if _impl is None:
    from . import _pykernels as _impl

BACKEND = "compiled" if _impl.__name__.endswith("_ckernels") else "python"

conv_rect = _impl.conv_rect
decay_sums = _impl.decay_sums
uniform_sums = _impl.uniform_sums
weighted_sums = _impl.weighted_sums

__all__ = ["BACKEND", "conv_rect", "decay_sums", "uniform_sums", "weighted_sums"]
