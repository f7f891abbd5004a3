"""Compiled Numerov recurrences for ``w'' + g w = 0`` on a uniform mesh."""

import numpy as np
from numba import njit

_BIG = 1e150


@njit(cache=True)
def outward(g, h, w0, w1, stop):
    """
    Integrate from index 0 up to ``stop`` (inclusive).

    Returns the solution (zeros beyond ``stop``) and the number of strict
    sign changes, ignoring exact zeros. Overflow is avoided by rescaling
    the computed part in place.
    """
    n = g.shape[0]
    w = np.zeros(n)
    w[0] = w0
    w[1] = w1
    c = h * h / 12.0
    nodes = 0
    last = w0 if w0 != 0.0 else w1
    if w0 * w1 < 0.0:
        nodes += 1
    for k in range(1, stop):
        w[k + 1] = (2.0 * (1.0 - 5.0 * c * g[k]) * w[k] - (1.0 + c * g[k - 1]) * w[k - 1]) / (
            1.0 + c * g[k + 1]
        )
        if w[k + 1] != 0.0:
            if w[k + 1] * last < 0.0:
                nodes += 1
            last = w[k + 1]
        if abs(w[k + 1]) > _BIG:
            for j in range(k + 2):
                w[j] /= _BIG
            last /= _BIG
    return w, nodes


@njit(cache=True)
def inward(g, h, wn, wn1, stop):
    """Integrate from the last index down to ``stop`` (inclusive)."""
    n = g.shape[0]
    w = np.zeros(n)
    w[n - 1] = wn
    w[n - 2] = wn1
    c = h * h / 12.0
    nodes = 0
    last = wn1
    for k in range(n - 2, stop, -1):
        w[k - 1] = (2.0 * (1.0 - 5.0 * c * g[k]) * w[k] - (1.0 + c * g[k + 1]) * w[k + 1]) / (
            1.0 + c * g[k - 1]
        )
        if w[k - 1] != 0.0:
            if w[k - 1] * last < 0.0:
                nodes += 1
            last = w[k - 1]
        if abs(w[k - 1]) > _BIG:
            for j in range(k - 1, n):
                w[j] /= _BIG
            last /= _BIG
    return w, nodes
