import math

import numpy as np
import pytest

from privsig.analysis import (
    LN2,
    Matrix2,
    curvature_terms,
    gradient_I_in_P,
    hessian_I_in_kappa,
    hessian_I_in_P,
    is_positive_semidefinite,
    jacobian_P_in_kappa,
)
from privsig.checks import fd_hessian, random_prior
from privsig.model import BoundaryPoint, DecoderY, GeneralEncoder, NotSymmetric, SymmetricEncoder, make_prior
from privsig.objectives import mutual_information, mutual_information_from_masses


def interior_grid(step=0.02):
    n = round(1 / step)
    for iq in range(1, n):
        q1 = iq * step
        for i1 in range(1, iq):
            for i2 in range(1, n - iq):
                yield i1 * step, i2 * step, q1


def test_hessian_in_P_singular_example():
    h = hessian_I_in_P(0.25, 0.25, 0.5)
    expected = Matrix2(4, -4, -4, 4).scale(1 / LN2)
    for got, want in zip(h.as_rows(), expected.as_rows()):
        assert got == pytest.approx(want, rel=1e-12)
    assert abs(h.det) < 1e-12
    assert is_positive_semidefinite(h)


def test_hessian_in_P_regular_example():
    A, B, C = curvature_terms(0.1, 0.2, 0.5)
    assert (A, B, C) == pytest.approx((4.761905, 12.5, 8.333333), abs=1e-6)
    assert (B - A) * (C - A) - A * A == pytest.approx(4.960, abs=5e-4)
    h = hessian_I_in_P(0.1, 0.2, 0.5)
    assert h.m12 == h.m21


def test_hessian_boundary_is_error():
    with pytest.raises(BoundaryPoint):
        hessian_I_in_P(0.0, 0.2, 0.5)
    with pytest.raises(BoundaryPoint):
        hessian_I_in_P(0.5, 0.2, 0.5)


def test_hessian_psd_on_grid():
    worst = math.inf
    count = 0
    for P1, P2, q1 in interior_grid():
        h = hessian_I_in_P(P1, P2, q1)
        A, B, C = curvature_terms(P1, P2, q1)
        assert B > A and C > A
        worst = min(worst, h.eigenvalues()[0])
        count += 1
    assert count > 15000
    assert worst >= -1e-9


def test_hessian_matches_finite_differences_in_P(rng):
    for _ in range(50):
        q1 = rng.uniform(0.2, 0.8)
        P1, P2 = rng.uniform(0.2, 0.8) * q1, rng.uniform(0.2, 0.8) * (1 - q1)
        num = fd_hessian(lambda u, v: mutual_information_from_masses(u, v, q1), P1, P2, 1e-4)
        exact = np.array(hessian_I_in_P(P1, P2, q1).as_rows())
        assert np.linalg.norm(num - exact) / np.linalg.norm(exact) < 1e-4


def test_gradient_formula_matches_fd(rng):
    h = 1e-5
    for _ in range(100):
        q1 = rng.uniform(0.1, 0.9)
        P1, P2 = rng.uniform(0.1, 0.9) * q1, rng.uniform(0.1, 0.9) * (1 - q1)
        f = lambda u, v: mutual_information_from_masses(u, v, q1)  # noqa: E731
        g1 = (f(P1 + h, P2) - f(P1 - h, P2)) / (2 * h)
        g2 = (f(P1, P2 + h) - f(P1, P2 - h)) / (2 * h)
        assert gradient_I_in_P(P1, P2, q1) == pytest.approx((g1, g2), abs=1e-6)


def test_jacobian_examples(ref_prior):
    np.testing.assert_allclose(jacobian_P_in_kappa(ref_prior, 1, 0).as_rows(), [[0.3, -0.2], [-0.4, 0.1]])
    assert jacobian_P_in_kappa(ref_prior, 0.3, 0.3) == Matrix2(0, 0, 0, 0)
    uni = jacobian_P_in_kappa(make_prior(0.25, 0.25, 0.25), 0, 1)
    np.testing.assert_allclose(uni.as_rows(), [[-0.25, 0.25], [0.25, -0.25]])


def test_jacobian_matches_fd(rng):
    for _ in range(20):
        prior = random_prior(rng, 0.02)
        d1, d2 = rng.random(2)
        k = rng.uniform(0.1, 0.9, 2)

        def masses(k1, k2):
            t = [d1 * x + d2 * (1 - x) for x in SymmetricEncoder(k1, k2).kappas]
            return np.array([prior.a * t[0] + prior.c * t[2], prior.b * t[1] + prior.d * t[3]])

        h = 1e-6
        col1 = (masses(k[0] + h, k[1]) - masses(k[0] - h, k[1])) / (2 * h)
        col2 = (masses(k[0], k[1] + h) - masses(k[0], k[1] - h)) / (2 * h)
        np.testing.assert_allclose(np.column_stack([col1, col2]), jacobian_P_in_kappa(prior, d1, d2).as_rows(), atol=1e-8)


def test_hessian_in_kappa_zero_when_decoder_constant(ref_prior):
    assert hessian_I_in_kappa(ref_prior, SymmetricEncoder(0.3, 0.4), DecoderY(0.5, 0.5)) == Matrix2(0, 0, 0, 0)


def test_hessian_in_kappa_psd_center(ref_prior):
    h = hessian_I_in_kappa(ref_prior, SymmetricEncoder(0.5, 0.5), DecoderY(1, 0))
    assert h.eigenvalues()[0] >= -1e-9


def test_hessian_in_kappa_requires_symmetric(ref_prior):
    with pytest.raises(TypeError):
        hessian_I_in_kappa(ref_prior, GeneralEncoder(0.1, 0.2, 0.3, 0.4), DecoderY(1, 0))


def test_hessian_in_kappa_matches_fd(rng):
    for _ in range(100):
        prior = random_prior(rng, floor=0.05)
        k = rng.uniform(0.1, 0.9, 2)
        d1 = rng.random()
        d2 = (d1 + rng.uniform(0.2, 0.8)) % 1.0
        dy = DecoderY(d1, d2)
        exact = np.array(hessian_I_in_kappa(prior, SymmetricEncoder(*k), dy).as_rows())
        num = fd_hessian(lambda u, v: mutual_information(prior, SymmetricEncoder(u, v), dy), k[0], k[1], 1e-4)
        assert np.linalg.norm(exact - num) / np.linalg.norm(exact) < 1e-4


def test_hessian_in_kappa_psd_random(rng):
    for _ in range(500):
        prior = random_prior(rng, floor=0.01)
        h = hessian_I_in_kappa(prior, SymmetricEncoder(*rng.uniform(0.02, 0.98, 2)), DecoderY(*rng.random(2)))
        assert is_positive_semidefinite(h, 1e-9)


@pytest.mark.parametrize(
    "m, psd",
    [
        (Matrix2(1, 0, 0, 1), True),
        (Matrix2(1, 2, 2, 1), False),
        (Matrix2(4, -4, -4, 4).scale(1 / LN2), True),
    ],
)
def test_is_psd(m, psd):
    assert is_positive_semidefinite(m, 1e-9) is psd


def test_eigenvalues_closed_form():
    lo, hi = Matrix2(1, 2, 2, 1).eigenvalues()
    assert (lo, hi) == pytest.approx((-1, 3))
    lo, hi = Matrix2(4, -4, -4, 4).scale(1 / LN2).eigenvalues()
    assert lo == pytest.approx(0, abs=1e-12) and hi == pytest.approx(8 / LN2)


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        is_positive_semidefinite(Matrix2(1, 0.5, 0, 1), 1e-9)
