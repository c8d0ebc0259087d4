"""Lowest eigenvalues of symmetric tridiagonal matrices by Sturm bisection.

Works at the caller's mpmath precision.  The negative count of the standard
Sturm-sequence recurrence d_1 = a_1 - t, d_i = a_i - t - b_{i-1}^2 / d_{i-1}
equals the number of eigenvalues below t, which bisection then pins down.
"""

from __future__ import annotations

from typing import Sequence

import mpmath


def count_below(diag: Sequence, off: Sequence, t) -> int:
    """Number of eigenvalues strictly below t."""
    count = 0
    d = diag[0] - t
    tiny = mpmath.mpf(2) ** (-mpmath.mp.prec) * (1 + abs(t))
    if d == 0:
        d = -tiny
    if d < 0:
        count += 1
    for i in range(1, len(diag)):
        d = diag[i] - t - off[i - 1] * off[i - 1] / d
        if d == 0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def lowest_eigenvalues(diag: Sequence, off: Sequence, k: int,
                       tol=None) -> list:
    """The k smallest eigenvalues, each bisected to tol (default ~quarter
    of the working precision)."""
    n = len(diag)
    if len(off) != n - 1:
        raise ValueError("off-diagonal length must be n - 1")
    if k < 1 or k > n:
        raise ValueError("need 1 <= k <= n")
    if tol is None:
        tol = mpmath.mpf(2) ** (-(mpmath.mp.prec * 3) // 4)
    lo = diag[0]
    hi = diag[0]
    for i in range(n):
        radius = (abs(off[i - 1]) if i > 0 else 0) + (abs(off[i]) if i < n - 1 else 0)
        lo = min(lo, diag[i] - radius)
        hi = max(hi, diag[i] + radius)
    values = []
    for j in range(1, k + 1):
        a, b = lo, hi
        while b - a > tol * (1 + abs(a) + abs(b)):
            mid = (a + b) / 2
            if count_below(diag, off, mid) >= j:
                b = mid
            else:
                a = mid
        values.append((a + b) / 2)
    return values
