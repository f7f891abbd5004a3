"""
Modified Bessel functions of order zero.

Self-contained evaluation of I0 and K0 for real arguments, used by the
screened planar potential. No external special-function library is needed.

K0 uses two branches:

* ``x <= 2``: the ascending series
  ``K0(x) = -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 H_k``
* ``x > 2``: Steed's continued fraction for the exponentially scaled
  function ``exp(x) K0(x)`` (Temme's CF2 formulation).

Both branches are accurate to a few units in the last place near the
switch point, well inside the advertised relative error bound.
"""

import math

import numpy as np

EULER_GAMMA = 0.57721566490153286061

#: advertised bound on |computed - true| / |true| for 1e-8 <= x <= 700
K0_MAX_RELATIVE_ERROR = 1e-9

K0_BRANCH_SWITCH = 2.0
_I0_ASYMPTOTIC_SWITCH = 20.0

_N_SERIES = 30
_CF_EPS = 1e-16
_CF_MAXIT = 10000


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _i0_series(x):
    y = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    k = 1
    while True:
        term = term * y / (k * k)
        total = total + term
        if np.all(term <= 1e-17 * total):
            return total
        k += 1


def _i0_asymptotic(x):
    # exp(x)/sqrt(2 pi x) * sum ((2k-1)!!)^2 / (k! (8x)^k)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 40):
        term = term * (2 * k - 1) ** 2 / (8.0 * k * x)
        total = total + term
    # exp(x/2)**2 postpones overflow of the prefactor slightly
    half = np.exp(0.5 * x)
    return half * (half / np.sqrt(2.0 * np.pi * x)) * total


def bessel_i0(x):
    """
    Modified Bessel function of the first kind, order zero.

    Parameters
    ----------
    x : float or array_like
        Real argument.

    Returns
    -------
    float or ndarray
        I0(x). Even in x, I0(0) = 1.

    Raises
    ------
    OverflowError
        If the result exceeds the double range (|x| larger than about 713.9).
    """
    arr, scalar = _as_array(x)
    ax = np.abs(arr)
    if not np.all(np.isfinite(ax)):
        raise ValueError("bessel_i0 requires finite arguments")
    out = np.empty_like(ax)
    small = ax <= _I0_ASYMPTOTIC_SWITCH
    if np.any(small):
        out[small] = _i0_series(ax[small])
    if np.any(~small):
        with np.errstate(over="ignore"):
            out[~small] = _i0_asymptotic(ax[~small])
    if np.any(np.isinf(out)):
        raise OverflowError("bessel_i0 overflows for |x| > ~713.9")
    return float(out) if scalar else out


def _k0_series(x):
    """Ascending-series branch; accurate for 0 < x <~ 3."""
    y = 0.25 * x * x
    term = np.ones_like(x)
    i0 = np.ones_like(x)
    tail = np.zeros_like(x)
    harmonic = 0.0
    for k in range(1, _N_SERIES):
        term = term * y / (k * k)
        harmonic += 1.0 / k
        i0 = i0 + term
        tail = tail + term * harmonic
    return -(np.log(0.5 * x) + EULER_GAMMA) * i0 + tail


def _k0e_cf(x):
    """exp(x) K0(x) by Steed's continued fraction; accurate for x >~ 1."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _CF_MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        dels = q * delh
        s = s + dels
        if np.all(np.abs(dels) < _CF_EPS * np.abs(s)):
            break
    else:
        raise RuntimeError("K0 continued fraction failed to converge")
    return np.sqrt(np.pi / (2.0 * x)) / s


def _k0_cf(x):
    with np.errstate(under="ignore"):
        return _k0e_cf(x) * np.exp(-x)


def bessel_k0(x):
    """
    Modified Bessel function of the second kind, order zero.

    Parameters
    ----------
    x : float or array_like
        Strictly positive argument.

    Returns
    -------
    float or ndarray
        K0(x), positive and strictly decreasing. Arguments beyond the
        double-precision underflow threshold (x > ~745) give exactly 0.

    Raises
    ------
    ValueError
        If any x <= 0 (K0 diverges logarithmically at the origin) or is NaN.
    """
    arr, scalar = _as_array(x)
    if np.any(~(arr > 0)):
        raise ValueError("bessel_k0 is defined for x > 0 only")
    out = np.empty_like(arr)
    small = arr <= K0_BRANCH_SWITCH
    if np.any(small):
        out[small] = _k0_series(arr[small])
    big = ~small
    if np.any(big):
        out[big] = _k0_cf(arr[big])
    return float(out) if scalar else out


def bessel_k0e(x):
    """Exponentially scaled K0, ``exp(x) * K0(x)``; never underflows."""
    arr, scalar = _as_array(x)
    if np.any(~(arr > 0)):
        raise ValueError("bessel_k0e is defined for x > 0 only")
    out = np.empty_like(arr)
    small = arr <= K0_BRANCH_SWITCH
    if np.any(small):
        out[small] = _k0_series(arr[small]) * np.exp(arr[small])
    if np.any(~small):
        out[~small] = _k0e_cf(arr[~small])
    return float(out) if scalar else out


def k0_log_singularity(x):
    """Leading small-x behaviour ``-ln(x/2) - gamma`` of K0."""
    return -math.log(0.5 * x) - EULER_GAMMA
