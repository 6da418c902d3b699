"""Jitted inner loops for gate application on flat amplitude buffers.

Amplitudes live in two parallel float64 arrays (real and imaginary parts);
the flat index runs over the C-order flattening of a (2,)*n (+ batch)
tensor.  A gate on tensor axis position k sees the buffer as blocks
(L, 2, R) with L = 2**k leading blocks and R trailing elements.

Numba is optional: when it is missing, the pure-numpy paths in
:mod:`zzkit.simulator` are used instead and results are identical.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap


@njit(cache=True, fastmath=True)
def apply_1q(ar, ai, L, R, m00r, m00i, m01r, m01i, m10r, m10i, m11r, m11i):
    for blk in range(L):
        p0 = blk * 2 * R
        p1 = p0 + R
        for r in range(R):
            x0r = ar[p0 + r]
            x0i = ai[p0 + r]
            x1r = ar[p1 + r]
            x1i = ai[p1 + r]
            ar[p0 + r] = m00r * x0r - m00i * x0i + m01r * x1r - m01i * x1i
            ai[p0 + r] = m00r * x0i + m00i * x0r + m01r * x1i + m01i * x1r
            ar[p1 + r] = m10r * x0r - m10i * x0i + m11r * x1r - m11i * x1i
            ai[p1 + r] = m10r * x0i + m10i * x0r + m11r * x1i + m11i * x1r


@njit(cache=True, fastmath=True)
def apply_diag1(ar, ai, L, R, f0r, f0i, f1r, f1i):
    """Multiply the 0-slice by f0 and the 1-slice by f1 on one axis."""
    for blk in range(L):
        p0 = blk * 2 * R
        p1 = p0 + R
        for r in range(p0, p0 + R):
            xr = ar[r]
            xi = ai[r]
            ar[r] = f0r * xr - f0i * xi
            ai[r] = f0r * xi + f0i * xr
        for r in range(p1, p1 + R):
            xr = ar[r]
            xi = ai[r]
            ar[r] = f1r * xr - f1i * xi
            ai[r] = f1r * xi + f1i * xr


@njit(cache=True, fastmath=True)
def apply_zz(ar, ai, L, M, R, sr, si, dr, di):
    """Phase by s on equal bits and d on unequal bits of two axes.

    Blocks: (L, 2, M, 2, R) with the two length-2 axes the gate's qubits.
    """
    for a in range(L):
        for b1 in range(2):
            for c in range(M):
                base = (((a * 2 + b1) * M + c) * 2) * R
                for b2 in range(2):
                    if b1 == b2:
                        fr, fi = sr, si
                    else:
                        fr, fi = dr, di
                    start = base + b2 * R
                    for r in range(start, start + R):
                        xr = ar[r]
                        xi = ai[r]
                        ar[r] = fr * xr - fi * xi
                        ai[r] = fr * xi + fi * xr


@njit(cache=True, fastmath=True)
def apply_scale(ar, ai, fr, fi):
    for r in range(ar.shape[0]):
        xr = ar[r]
        xi = ai[r]
        ar[r] = fr * xr - fi * xi
        ai[r] = fr * xi + fi * xr


def _warm_up() -> None:
    """Trigger (cached) jit compilation outside any caller's timing."""
    ar = np.zeros(4)
    ai = np.zeros(4)
    apply_1q(ar, ai, 1, 2, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0)
    apply_diag1(ar, ai, 1, 2, 1.0, 0.0, 1.0, 0.0)
    apply_zz(ar, ai, 1, 1, 1, 1.0, 0.0, 1.0, 0.0)
    apply_scale(ar, ai, 1.0, 0.0)


if AVAILABLE:
    _warm_up()
