"""Integer-order Bessel functions J_n(x) by Miller's downward recurrence."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["bessel_j_sequence"]

_RESCALE = 1e250
_SERIES_LIMIT = 1e-3


def _start_order(x: float, n_max: int) -> int:
    # start well past both the requested order and the turning point n ~ x
    m = max(n_max, int(x)) + 30 + int(10.0 * math.sqrt(max(x, 1.0)))
    return m + (m % 2)


def bessel_j_sequence(x: float, n_max: int) -> np.ndarray:
    """Return [J_0(x), ..., J_{n_max}(x)] for real x.

    Recurrence J_{k-1} = (2k/x) J_k - J_{k+1} is run downwards from an order
    where J is negligible, then normalised with J_0 + 2 * sum_k J_{2k} = 1.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    out = np.zeros(n_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    sign = 1.0
    if x < 0:
        x = -x
        sign = -1.0
    if x < _SERIES_LIMIT:
        out[:] = _small_argument(x, n_max)
    else:
        out[:] = _miller(x, n_max)
    if sign < 0:
        # J_n(-x) = (-1)^n J_n(x)
        out[1::2] *= -1.0
    return out


def _small_argument(x: float, n_max: int) -> np.ndarray:
    # power series; four terms reach machine precision for x < 1e-3
    out = np.zeros(n_max + 1)
    lead = 1.0
    q = -0.25 * x * x
    for n in range(n_max + 1):
        if n:
            lead *= 0.5 * x / n
        if lead == 0.0:
            break
        term, total = lead, lead
        for k in range(1, 4):
            term *= q / (k * (n + k))
            total += term
        out[n] = total
    return out


def _miller(x: float, n_max: int) -> np.ndarray:
    m = _start_order(x, n_max)
    vals = np.zeros(m + 2)
    vals[m] = 1e-300
    for k in range(m, 0, -1):
        vals[k - 1] = (2.0 * k / x) * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > _RESCALE:
            vals[k - 1 :] /= _RESCALE
    norm = vals[0] + 2.0 * vals[2 : m + 1 : 2].sum()
    return vals[: n_max + 1] / norm
