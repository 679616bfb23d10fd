"""Closed-form payoffs against the explicit pmf summation and hand values.

Frozen numbers were computed with an independent script that builds the
joint pmf of (x, y, z, yhat) cell by cell.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import decoders_x, decoders_y, priors, symmetric_encoders, unit
from privsig.model import (
    DecoderX,
    DecoderY,
    DegenerateMarginal,
    GeneralEncoder,
    OutOfRange,
    SymmetricEncoder,
    make_prior,
)
from privsig.objectives import (
    binary_entropy,
    decoder_payoff,
    encoder_payoff,
    hamming_distortion,
    induced_distributions,
    mutual_information,
    mutual_information_oracle,
)

I_SYM00_REF = 0.124511249784  # H_b(0.5) + H_b(0.6) + sum p log p


@pytest.mark.parametrize("p, h", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.4, 0.970950594)])
def test_binary_entropy(p, h):
    assert binary_entropy(p) == pytest.approx(h, abs=1e-9)


def test_binary_entropy_range():
    with pytest.raises(OutOfRange):
        binary_entropy(1.5)


def test_induced_distributions_reference(ref_prior):
    d = induced_distributions(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0))
    np.testing.assert_allclose(d.py, [0.5, 0.5])
    np.testing.assert_allclose(d.px_given_y, [[0.6, 0.2], [0.4, 0.8]])
    np.testing.assert_allclose(d.pyhat_given_y, [[0, 1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(d.pyhat, [0.5, 0.5])


def test_induced_distributions_constant_decoder(ref_prior):
    d = induced_distributions(ref_prior, SymmetricEncoder(0.3, 0.8), DecoderY(0.7, 0.7))
    np.testing.assert_allclose(d.pyhat, [0.7, 0.3])
    np.testing.assert_allclose(d.pyhat_given_y, [[0.7, 0.7], [0.3, 0.3]])


def test_induced_distributions_uniform():
    d = induced_distributions(make_prior(0.25, 0.25, 0.25), SymmetricEncoder(1, 1), DecoderY(1, 0))
    assert d.pyhat_given_y[0, 0] == pytest.approx(0.5)


@given(priors(), symmetric_encoders, decoders_y)
def test_induced_distributions_stochastic(prior, enc, dy):
    if not 1e-6 < prior.q1 < 1 - 1e-6:
        return
    d = induced_distributions(prior, enc, dy)
    for m in (d.px_given_y, d.pyhat_given_y):
        np.testing.assert_allclose(m.sum(axis=0), 1.0, atol=1e-9)
    assert d.py.sum() == pytest.approx(1.0) and d.pyhat.sum() == pytest.approx(1.0)


def test_induced_distributions_degenerate():
    with pytest.raises(DegenerateMarginal):
        induced_distributions(make_prior(0.0, 0.5, 0.0), SymmetricEncoder(0, 1), DecoderY(1, 0))


def test_mutual_information_examples(ref_prior):
    assert mutual_information(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0)) == pytest.approx(1.0, abs=1e-12)
    assert mutual_information(ref_prior, SymmetricEncoder(0, 0), DecoderY(1, 0)) == pytest.approx(I_SYM00_REF, abs=1e-11)
    assert mutual_information(ref_prior, SymmetricEncoder(0.2, 0.9), DecoderY(0.4, 0.4)) == pytest.approx(0.0, abs=1e-15)


def test_mutual_information_degenerate_marginal_is_zero():
    prior = make_prior(0.0, 0.6, 0.0)
    assert mutual_information(prior, SymmetricEncoder(0, 1), DecoderY(1, 0)) == 0.0


def test_oracle_examples(ref_prior):
    assert mutual_information_oracle(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0)) == pytest.approx(1.0, abs=1e-12)
    assert mutual_information_oracle(ref_prior, SymmetricEncoder(0.4, 0.1), DecoderY(0.5, 0.5)) == pytest.approx(0.0, abs=1e-15)


def test_oracle_equivalence_random(rng):
    for _ in range(1000):
        p = rng.dirichlet(np.ones(4))
        prior = make_prior(*p[:3])
        enc = GeneralEncoder(*rng.random(4))
        dy = DecoderY(*rng.random(2))
        assert abs(mutual_information(prior, enc, dy) - mutual_information_oracle(prior, enc, dy)) < 1e-9


@given(priors(), symmetric_encoders, decoders_y)
def test_mi_bounds(prior, enc, dy):
    info = mutual_information(prior, enc, dy)
    assert 0.0 <= info <= binary_entropy(prior.q1) + 1e-12


@given(priors(), unit, unit)
def test_complement_symmetry(prior, k1, k2):
    dy = DecoderY(1, 0)
    a = mutual_information(prior, SymmetricEncoder(k1, k2), dy)
    b = mutual_information(prior, SymmetricEncoder(1 - k1, 1 - k2), dy)
    assert a == pytest.approx(b, abs=1e-12)


@given(priors(), st.tuples(unit, unit, unit, unit), decoders_y)
def test_swap_symmetry(prior, kap, dy):
    flipped = GeneralEncoder(*(1 - k for k in kap))
    a = mutual_information(prior, GeneralEncoder(*kap), dy)
    b = mutual_information(prior, flipped, DecoderY(dy.d2, dy.d1))
    assert a == pytest.approx(b, abs=1e-12)


def test_hamming_examples(ref_prior, rng):
    for _ in range(10):
        enc = SymmetricEncoder(*rng.random(2))
        assert hamming_distortion(ref_prior, enc, DecoderX(0, 0)) == pytest.approx(0.4)
        assert hamming_distortion(ref_prior, enc, DecoderX(1, 1)) == pytest.approx(0.6)
    assert hamming_distortion(ref_prior, SymmetricEncoder(0, 1), DecoderX(0, 1)) == pytest.approx(0.3)


@given(priors(), symmetric_encoders, symmetric_encoders, decoders_x)
def test_distortion_affine_in_kappa(prior, u, v, dx):
    mid = SymmetricEncoder((u.k1 + v.k1) / 2, (u.k2 + v.k2) / 2)
    lhs = hamming_distortion(prior, mid, dx)
    rhs = (hamming_distortion(prior, u, dx) + hamming_distortion(prior, v, dx)) / 2
    assert lhs == pytest.approx(rhs, abs=1e-12)


@given(priors(), symmetric_encoders, decoders_x, decoders_x)
def test_distortion_affine_in_eps(prior, enc, u, v):
    mid = DecoderX((u.e1 + v.e1) / 2, (u.e2 + v.e2) / 2)
    lhs = hamming_distortion(prior, enc, mid)
    rhs = (hamming_distortion(prior, enc, u) + hamming_distortion(prior, enc, v)) / 2
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_hamming_matches_brute_force(rng):
    for _ in range(200):
        p = rng.dirichlet(np.ones(4))
        prior = make_prior(*p[:3])
        kap = rng.random(4)
        e = rng.random(2)
        brute = 0.0
        for col, (x, _y) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
            for z in (0, 1):
                pz = kap[col] if z == 0 else 1 - kap[col]
                p_xhat0 = e[z]
                brute += p[col] * pz * (p_xhat0 if x == 1 else 1 - p_xhat0)
        assert hamming_distortion(prior, GeneralEncoder(*kap), DecoderX(*e)) == pytest.approx(brute, abs=1e-12)


def test_encoder_payoff_examples(ref_prior):
    p = encoder_payoff(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0), DecoderX(0, 1), 1.0)
    assert p.encoder_payoff == pytest.approx(1.3)
    p = encoder_payoff(ref_prior, SymmetricEncoder(0, 0), DecoderY(1, 0), DecoderX(0, 0), 1.0)
    assert p.encoder_payoff == pytest.approx(I_SYM00_REF + 0.4, abs=1e-11)
    p = encoder_payoff(ref_prior, SymmetricEncoder(0.3, 0.6), DecoderY(1, 0), DecoderX(0.2, 0.7), 0.0)
    assert p.encoder_payoff == p.mutual_info


def test_decoder_payoff_examples(ref_prior):
    p = decoder_payoff(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0), DecoderX(0, 1))
    assert p.decoder_payoff == pytest.approx(0.7)
    p = decoder_payoff(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0), DecoderX(1, 0))
    assert p.distortion == pytest.approx(0.7)
    assert p.decoder_payoff == pytest.approx(0.3)
    p = decoder_payoff(ref_prior, SymmetricEncoder(0.8, 0.1), DecoderY(0.6, 0.6), DecoderX(0, 0))
    assert p.decoder_payoff == pytest.approx(-0.4)


@settings(max_examples=50)
@given(priors(), symmetric_encoders, decoders_y, decoders_x, st.floats(0, 50))
def test_payoff_pair_consistency(prior, enc, dy, dx, rho):
    p = encoder_payoff(prior, enc, dy, dx, rho)
    assert p.encoder_payoff == p.mutual_info + rho * p.distortion
    assert p.decoder_payoff == p.mutual_info - p.distortion
    assert 0.0 <= p.distortion <= 1.0 + 1e-12


def test_negative_rho_rejected(ref_prior):
    with pytest.raises(ValueError):
        encoder_payoff(ref_prior, SymmetricEncoder(0, 1), DecoderY(1, 0), DecoderX(0, 1), -1)


def test_log_base_two():
    # a noiseless binary channel on a uniform bit carries exactly one bit
    assert math.isclose(mutual_information(make_prior(0.25, 0.25, 0.25), SymmetricEncoder(0, 1), DecoderY(1, 0)), 1.0)
