"""Kernel dispatch: compiled extension when available, pure python otherwise.

The compiled path is used only when every intermediate of the convolution
fits in int64; exact big-integer work always goes through the pure path.
Set WITTLAB_PURE=1 to force the fallback (the benchmark uses this).
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None

_FORCE_PURE = os.environ.get("WITTLAB_PURE") == "1"

BACKEND = "pure" if (_speedups is None or _FORCE_PURE) else "compiled"

_INT64_BUDGET = 2**62


def poly_mul_trunc(a, b, mod, out_len):
    """Truncated convolution of two coefficient lists, coefficients mod `mod`.

    mod=None requests exact integer arithmetic.
    """
    if (
        _speedups is not None
        and not _FORCE_PURE
        and mod is not None
        and mod * mod * max(len(a), len(b), 1) < _INT64_BUDGET
    ):
        return _speedups.poly_mul_trunc(a, b, mod, out_len)
    return pure.poly_mul_trunc(a, b, mod, out_len)
