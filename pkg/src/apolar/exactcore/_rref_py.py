"""Pure-Python (numpy-vectorised) GF(p) row reduction.

Used when the compiled ``_rref`` extension is unavailable or when
``APOLAR_PURE_PYTHON=1`` is set.
"""

import numpy as np


def rref_modp(a: np.ndarray, p: int) -> list:
    """Reduce ``a`` (int64, entries in [0, p)) to RREF in place; return pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k], c:] = a[[k, r], c:]
        piv = int(a[r, c])
        if piv != 1:
            a[r, c:] = (a[r, c:] * pow(piv, -1, p)) % p
        f = a[:, c].copy()
        f[r] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            a[idx, c:] = (a[idx, c:] - np.outer(f[idx], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots
