"""Pure-python fallback for the convolution kernel.

Coefficients are python ints, so this path also covers arbitrary-size
(exact integer) arithmetic, which the compiled kernel does not.
"""

from __future__ import annotations


def poly_mul_trunc(a, b, mod, out_len):
    """Convolution of coefficient lists, truncated to out_len terms.

    mod=None means exact integer arithmetic (no reduction).
    """
    n, m = len(a), len(b)
    out = [0] * out_len
    for i, ai in enumerate(a):
        if ai == 0 or i >= out_len:
            continue
        top = min(m, out_len - i)
        for j in range(top):
            out[i + j] += ai * b[j]
    if mod is not None:
        out = [c % mod for c in out]
    return out
