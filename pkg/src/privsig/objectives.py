"""Mutual information, Hamming distortion and the two players' payoffs.

All logarithms are base 2. ``x log x`` is taken as 0 for ``x <= 1e-15``;
the equilibrium strategies themselves hit those zero-mass terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    NOISE_TOL,
    DecoderX,
    DecoderY,
    DegenerateMarginal,
    EncoderStrategy,
    JointPrior,
    check_prob,
)

XLOGX_FLOOR = 1e-15
LOG_FLOOR = 1e-300


def xlog2x(x: float) -> float:
    if x <= XLOGX_FLOOR:
        return 0.0
    return x * math.log2(x)


def binary_entropy(p: float) -> float:
    p = check_prob(p, "p")
    return -xlog2x(p) - xlog2x(1.0 - p)


@dataclass(frozen=True)
class InducedDistributions:
    py: np.ndarray
    px_given_y: np.ndarray
    pyhat_given_y: np.ndarray
    pyhat: np.ndarray


@dataclass(frozen=True)
class PayoffPair:
    mutual_info: float
    distortion: float
    encoder_payoff: float
    decoder_payoff: float

    def as_dict(self) -> dict[str, float]:
        return {
            "mutual_info": self.mutual_info,
            "distortion": self.distortion,
            "encoder_payoff": self.encoder_payoff,
            "decoder_payoff": self.decoder_payoff,
        }


def _masses(prior: JointPrior, enc: EncoderStrategy, dy: DecoderY) -> tuple[float, float]:
    k = enc.kappas
    t = [dy.d1 * ki + dy.d2 * (1.0 - ki) for ki in k]
    return prior.a * t[0] + prior.c * t[2], prior.b * t[1] + prior.d * t[3]


def induced_distributions(
    prior: JointPrior, enc: EncoderStrategy, dy: DecoderY
) -> InducedDistributions:
    """P(y), P(x|y), P(yhat|y) and P(yhat) in column-stochastic layout.

    Raises DegenerateMarginal when one value of y has zero mass, since the
    matching conditional column is undefined.
    """
    a, b, c, d = prior.as_tuple()
    q1 = prior.q1
    if q1 <= NOISE_TOL or q1 >= 1.0 - NOISE_TOL:
        raise DegenerateMarginal(f"P(y=0) = {q1!r}; conditionals on y are undefined")
    P1, P2 = _masses(prior, enc, dy)
    py = np.array([q1, 1.0 - q1])
    px_given_y = np.array([[a / q1, b / (1.0 - q1)], [c / q1, d / (1.0 - q1)]])
    r0, r1 = P1 / q1, P2 / (1.0 - q1)
    pyhat_given_y = np.array([[r0, r1], [1.0 - r0, 1.0 - r1]])
    p0 = P1 + P2
    pyhat = np.array([p0, 1.0 - p0])
    return InducedDistributions(py, px_given_y, pyhat_given_y, pyhat)


def mutual_information_from_masses(P1: float, P2: float, q1: float) -> float:
    """I(y; yhat) in terms of P1 = P(y=0, yhat=0), P2 = P(y=1, yhat=0)."""
    if q1 <= NOISE_TOL or q1 >= 1.0 - NOISE_TOL:
        return 0.0
    s = P1 + P2
    value = (
        -xlog2x(q1)
        - xlog2x(1.0 - q1)
        - xlog2x(s)
        - xlog2x(1.0 - s)
        + xlog2x(P1)
        + xlog2x(P2)
        + xlog2x(q1 - P1)
        + xlog2x(1.0 - q1 - P2)
    )
    return max(value, 0.0)


def mutual_information(prior: JointPrior, enc: EncoderStrategy, dy: DecoderY) -> float:
    P1, P2 = _masses(prior, enc, dy)
    return mutual_information_from_masses(P1, P2, prior.q1)


def mutual_information_oracle(
    prior: JointPrior, enc: EncoderStrategy, dy: DecoderY
) -> float:
    """I(y; yhat) by explicit summation over the joint pmf of (y, yhat).

    Builds P(x, y, z, yhat) cell by cell and marginalizes; shares nothing
    with the closed form above except the inputs.
    """
    pxy = dict(zip(((0, 0), (0, 1), (1, 0), (1, 1)), prior.as_tuple()))
    kappa = dict(zip(((0, 0), (0, 1), (1, 0), (1, 1)), enc.kappas))
    delta = (dy.d1, dy.d2)
    joint = [[0.0, 0.0], [0.0, 0.0]]
    for (x, y), p in pxy.items():
        for z in (0, 1):
            pz = kappa[(x, y)] if z == 0 else 1.0 - kappa[(x, y)]
            for yhat in (0, 1):
                pyhat_z = delta[z] if yhat == 0 else 1.0 - delta[z]
                joint[y][yhat] += p * pz * pyhat_z
    py = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]]
    pyhat = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]]
    total = 0.0
    for y in (0, 1):
        for yhat in (0, 1):
            p = joint[y][yhat]
            if p > 0.0:
                ratio = p / max(py[y] * pyhat[yhat], LOG_FLOOR)
                total += p * math.log2(ratio)
    return total


def hamming_distortion(prior: JointPrior, enc: EncoderStrategy, dx: DecoderX) -> float:
    """E[d_H(x, xhat)], affine in both the encoder and the x-decoder."""
    n = [dx.e1 * k + dx.e2 * (1.0 - k) for k in enc.kappas]
    a, b, c, d = prior.as_tuple()
    return a * (1.0 - n[0]) + b * (1.0 - n[1]) + c * n[2] + d * n[3]


def evaluate(
    prior: JointPrior, enc: EncoderStrategy, dy: DecoderY, dx: DecoderX, rho: float
) -> PayoffPair:
    if rho < 0:
        raise ValueError(f"privacy weight rho must be >= 0, got {rho!r}")
    info = mutual_information(prior, enc, dy)
    dist = hamming_distortion(prior, enc, dx)
    return PayoffPair(
        mutual_info=info,
        distortion=dist,
        encoder_payoff=info + rho * dist,
        decoder_payoff=info - dist,
    )


def encoder_payoff(prior, enc, dy, dx, rho: float) -> PayoffPair:
    """Encoder objective I(y; yhat) + rho E[d_H], with its components."""
    return evaluate(prior, enc, dy, dx, rho)


def decoder_payoff(prior, enc, dy, dx, rho: float = 1.0) -> PayoffPair:
    """Decoder objective I(y; yhat) - E[d_H]; rho only fills encoder_payoff."""
    return evaluate(prior, enc, dy, dx, rho)
