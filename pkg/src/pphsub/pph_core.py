"""Harmonic-mean limiter and undivided difference operators."""

import numpy as np

from .errors import LengthError


def pph(x, y):
    """Harmonic mean gated to zero on opposite signs.

    ``pph(x, y) = 2xy / (x + y)`` when ``xy > 0`` and ``0`` otherwise
    (``pph(0, 0) = 0``).  Works elementwise on arrays; scalar inputs give a
    Python float.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    xa, ya = np.broadcast_arrays(xa, ya)
    out = np.zeros(xa.shape)
    # sign test instead of x*y > 0: the product underflows for tiny inputs
    same = ((xa > 0) & (ya > 0)) | ((xa < 0) & (ya < 0))
    if np.any(same):
        xs, ys = xa[same], ya[same]
        # order by magnitude so pph(x, y) == pph(y, x) bit for bit;
        # big / (small + big) lies in [1/2, 1), so nothing over- or underflows
        small = np.where(np.abs(xs) <= np.abs(ys), xs, ys)
        big = np.where(np.abs(xs) <= np.abs(ys), ys, xs)
        out[same] = 2.0 * small * (big / (small + big))
    if out.ndim == 0:
        return float(out)
    return out


def arithmetic_mean(x, y):
    return 0.5 * (np.asarray(x, dtype=float) + np.asarray(y, dtype=float))


def first_difference(f):
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or f.size < 2:
        raise LengthError(f"first difference needs at least 2 values, got {f.size}")
    return f[1:] - f[:-1]


def second_difference(f):
    """``d2[k] = f[k+2] - 2 f[k+1] + f[k]``.

    The result is two entries shorter and entry ``k`` belongs to input
    index ``k + 1``.
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or f.size < 3:
        raise LengthError(f"second difference needs at least 3 values, got {f.size}")
    return f[2:] - 2.0 * f[1:-1] + f[:-2]


def difference(f, order):
    """Undivided difference of the given order (``order=0`` returns a copy)."""
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or f.size < order + 1:
        raise LengthError(
            f"difference of order {order} needs at least {order + 1} values, got {f.size}"
        )
    return np.diff(f, n=order) if order else f.copy()
