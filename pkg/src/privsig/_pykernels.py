"""Pure numpy versions of the compiled kernels (same signatures, same math)."""

from __future__ import annotations

import numpy as np

XLOGX_FLOOR = 1e-15
DEGENERATE = 1e-12
CHUNK = 2048


def _xl(x):
    x = np.asarray(x, dtype=np.float64)
    safe = np.where(x > XLOGX_FLOOR, x, 1.0)
    return np.where(x > XLOGX_FLOOR, x * np.log2(safe), 0.0)


def _mi(prior, k1, k2, d1, d2):
    a, b, c, d = (float(v) for v in prior)
    q1 = a + c
    if q1 <= DEGENERATE or q1 >= 1.0 - DEGENERATE:
        return np.zeros(np.broadcast(k1, k2, d1, d2).shape)
    hq = -_xl(q1) - _xl(1.0 - q1)
    t1 = d1 * k1 + d2 * (1.0 - k1)
    t2 = d1 * k2 + d2 * (1.0 - k2)
    t3 = d1 * (1.0 - k2) + d2 * k2
    t4 = d1 * (1.0 - k1) + d2 * k1
    p1 = a * t1 + c * t3
    p2 = b * t2 + d * t4
    s = p1 + p2
    v = hq - _xl(s) - _xl(1.0 - s) + _xl(p1) + _xl(p2) + _xl(q1 - p1) + _xl(1.0 - q1 - p2)
    return np.maximum(v, 0.0)


def _dist(prior, k1, k2, e1, e2):
    a, b, c, d = (float(v) for v in prior)
    n1 = e1 * k1 + e2 * (1.0 - k1)
    n2 = e1 * k2 + e2 * (1.0 - k2)
    n3 = e1 * (1.0 - k2) + e2 * k2
    n4 = e1 * (1.0 - k1) + e2 * k1
    return a * (1.0 - n1) + b * (1.0 - n2) + c * n3 + d * n4


def mutual_info_grid(prior, kap, dy):
    kap = np.asarray(kap, dtype=np.float64)
    dy = np.asarray(dy, dtype=np.float64)
    return _mi(prior, kap[:, :1], kap[:, 1:], dy[None, :, 0], dy[None, :, 1])


def distortion_grid(prior, kap, dx):
    kap = np.asarray(kap, dtype=np.float64)
    dx = np.asarray(dx, dtype=np.float64)
    return _dist(prior, kap[:, :1], kap[:, 1:], dx[None, :, 0], dx[None, :, 1])


def encoder_payoffs(prior, rho, dec, kap):
    dec = np.asarray(dec, dtype=np.float64)
    kap = np.asarray(kap, dtype=np.float64)
    k1, k2 = kap[None, :, 0], kap[None, :, 1]
    info = _mi(prior, k1, k2, dec[:, :1], dec[:, 1:2])
    return info + rho * _dist(prior, k1, k2, dec[:, 2:3], dec[:, 3:4])


def encoder_payoff_extrema(prior, rho, dec, kap):
    dec = np.asarray(dec, dtype=np.float64)
    hi = np.empty(len(dec))
    lo = np.empty(len(dec))
    for start in range(0, len(dec), CHUNK):
        block = encoder_payoffs(prior, rho, dec[start:start + CHUNK], kap)
        hi[start:start + CHUNK] = block.max(axis=1)
        lo[start:start + CHUNK] = block.min(axis=1)
    return hi, lo
