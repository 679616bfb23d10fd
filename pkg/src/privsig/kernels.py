"""Batch evaluators used by the grid sweeps.

The compiled extension is used when it imports; otherwise (or with
``PRIVSIG_PURE_PYTHON=1`` in the environment) the numpy fallback is used.
``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

if os.environ.get("PRIVSIG_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"


def _c(arr) -> np.ndarray:
    return np.ascontiguousarray(arr, dtype=np.float64).reshape(-1, np.shape(arr)[-1])


def mutual_info_grid(prior, kap, dy, impl=None):
    """(N, K) I(y; yhat) for encoder points ``kap`` (N, 2) and y-decoders ``dy`` (K, 2)."""
    return (impl or _impl).mutual_info_grid(tuple(prior), _c(kap), _c(dy))


def distortion_grid(prior, kap, dx, impl=None):
    """(N, K) Hamming distortion for encoder points ``kap`` and x-decoders ``dx``."""
    return (impl or _impl).distortion_grid(tuple(prior), _c(kap), _c(dx))


def encoder_payoffs(prior, rho, dec, kap, impl=None):
    """(N, K) encoder payoffs; ``dec`` rows are (delta1, delta2, eps1, eps2)."""
    return (impl or _impl).encoder_payoffs(tuple(prior), float(rho), _c(dec), _c(kap))


def encoder_payoff_extrema(prior, rho, dec, kap, impl=None):
    """Row-wise (max, min) of :func:`encoder_payoffs`."""
    return (impl or _impl).encoder_payoff_extrema(tuple(prior), float(rho), _c(dec), _c(kap))


def square_grid(n: int) -> np.ndarray:
    """(n*n, 2) points of an inclusive n x n grid on the unit square, first
    coordinate outer."""
    g = np.linspace(0.0, 1.0, n)
    u, v = np.meshgrid(g, g, indexing="ij")
    return np.column_stack([u.ravel(), v.ravel()])


CORNERS = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
