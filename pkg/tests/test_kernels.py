import os
import subprocess
import sys

import numpy as np
import pytest

from privsig import _pykernels, kernels
from privsig.model import DecoderX, DecoderY, SymmetricEncoder, make_prior
from privsig.objectives import evaluate

try:
    from privsig import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")

PRIOR = (0.3, 0.1, 0.2, 0.4)


@pytest.fixture
def points(rng):
    kap = np.vstack([kernels.CORNERS, rng.random((60, 2))])
    dec = np.vstack([[1, 0, 0, 1], [0.5, 0.5, 0, 0], rng.random((40, 4))])
    return kap, dec


def test_square_grid_order():
    g = kernels.square_grid(3)
    assert g.shape == (9, 2)
    assert g[:3].tolist() == [[0, 0], [0, 0.5], [0, 1]]


def test_python_kernels_match_scalar(points):
    kap, dec = points
    prior = make_prior(*PRIOR)
    rho = 2.5
    info = kernels.mutual_info_grid(PRIOR, kap, dec[:, :2], impl=_pykernels)
    dist = kernels.distortion_grid(PRIOR, kap, dec[:, 2:], impl=_pykernels)
    pay = kernels.encoder_payoffs(PRIOR, rho, dec, kap, impl=_pykernels)
    for i in range(0, len(kap), 7):
        for j in range(0, len(dec), 5):
            p = evaluate(prior, SymmetricEncoder(*kap[i]), DecoderY(*dec[j, :2]), DecoderX(*dec[j, 2:]), rho)
            assert info[i, j] == pytest.approx(p.mutual_info, abs=1e-12)
            assert dist[i, j] == pytest.approx(p.distortion, abs=1e-12)
            assert pay[j, i] == pytest.approx(p.encoder_payoff, abs=1e-12)


@needs_ext
def test_backends_agree(points):
    kap, dec = points
    for name, args in (
        ("mutual_info_grid", (PRIOR, kap, dec[:, :2])),
        ("distortion_grid", (PRIOR, kap, dec[:, 2:])),
        ("encoder_payoffs", (PRIOR, 3.0, dec, kap)),
    ):
        fn = getattr(kernels, name)
        np.testing.assert_allclose(fn(*args, impl=_ckernels), fn(*args, impl=_pykernels), rtol=0, atol=1e-12)
    hi_c, lo_c = kernels.encoder_payoff_extrema(PRIOR, 3.0, dec, kap, impl=_ckernels)
    hi_p, lo_p = kernels.encoder_payoff_extrema(PRIOR, 3.0, dec, kap, impl=_pykernels)
    np.testing.assert_allclose(hi_c, hi_p, atol=1e-12)
    np.testing.assert_allclose(lo_c, lo_p, atol=1e-12)


def test_extrema_are_row_extrema(points):
    kap, dec = points
    full = kernels.encoder_payoffs(PRIOR, 1.0, dec, kap)
    hi, lo = kernels.encoder_payoff_extrema(PRIOR, 1.0, dec, kap)
    np.testing.assert_allclose(hi, full.max(axis=1), atol=1e-12)
    np.testing.assert_allclose(lo, full.min(axis=1), atol=1e-12)


def test_degenerate_marginal_kernel():
    prior = (0.0, 0.5, 0.0, 0.5)
    out = kernels.mutual_info_grid(prior, kernels.CORNERS, kernels.CORNERS, impl=_pykernels)
    assert np.all(out == 0.0)
    if _ckernels is not None:
        assert np.all(kernels.mutual_info_grid(prior, kernels.CORNERS, kernels.CORNERS, impl=_ckernels) == 0.0)


def test_pure_python_env_forces_fallback():
    env = dict(os.environ, PRIVSIG_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import privsig.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
