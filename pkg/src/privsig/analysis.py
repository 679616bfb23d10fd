"""Curvature of I(y; yhat): Hessians, the Jacobian of (P1, P2) in kappa,
and closed-form definiteness checks for 2x2 symmetric matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    NOISE_TOL,
    BoundaryPoint,
    DecoderY,
    JointPrior,
    NotSymmetric,
    SymmetricEncoder,
    require_symmetric,
)
from .objectives import _masses

LN2 = math.log(2.0)


@dataclass(frozen=True)
class Matrix2:
    m11: float
    m12: float
    m21: float
    m22: float

    def __matmul__(self, other: Matrix2) -> Matrix2:
        return Matrix2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def scale(self, s: float) -> Matrix2:
        return Matrix2(s * self.m11, s * self.m12, s * self.m21, s * self.m22)

    @property
    def T(self) -> Matrix2:
        return Matrix2(self.m11, self.m21, self.m12, self.m22)

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_rows(self) -> list[list[float]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]

    def eigenvalues(self) -> tuple[float, float]:
        """(min, max) eigenvalues of the symmetric part."""
        off = 0.5 * (self.m12 + self.m21)
        half_tr = 0.5 * self.trace
        gap = math.hypot(0.5 * (self.m11 - self.m22), off)
        hi = half_tr + gap if half_tr >= 0 else half_tr - gap
        det = self.m11 * self.m22 - off * off
        # small root via det / large root; avoids cancellation near det = 0
        lo = det / hi if hi != 0.0 else 0.0
        return (min(lo, hi), max(lo, hi))


def curvature_terms(P1: float, P2: float, q1: float) -> tuple[float, float, float]:
    """The A, B, C terms of the P-space Hessian."""
    s = P1 + P2
    A = 1.0 / s + 1.0 / (1.0 - s)
    B = 1.0 / P1 + 1.0 / (q1 - P1)
    C = 1.0 / P2 + 1.0 / (1.0 - q1 - P2)
    return A, B, C


def _require_interior(P1: float, P2: float, q1: float) -> None:
    tol = NOISE_TOL
    s = P1 + P2
    if not (tol < P1 < q1 - tol and tol < P2 < 1.0 - q1 - tol and tol < s < 1.0 - tol):
        raise BoundaryPoint(f"(P1, P2, q1) = ({P1!r}, {P2!r}, {q1!r}) is not strictly interior")


def gradient_I_in_P(P1: float, P2: float, q1: float) -> tuple[float, float]:
    _require_interior(P1, P2, q1)
    s = P1 + P2
    common = -math.log2(s) + math.log2(1.0 - s)
    return (
        common + math.log2(P1) - math.log2(q1 - P1),
        common + math.log2(P2) - math.log2(1.0 - q1 - P2),
    )


def hessian_I_in_P(P1: float, P2: float, q1: float) -> Matrix2:
    _require_interior(P1, P2, q1)
    A, B, C = curvature_terms(P1, P2, q1)
    return Matrix2(-A + B, -A, -A, -A + C).scale(1.0 / LN2)


def jacobian_P_in_kappa(prior: JointPrior, d1: float, d2: float) -> Matrix2:
    """d(P1, P2) / d(kappa1, kappa2) under the symmetric encoder."""
    g = d1 - d2
    return Matrix2(g * prior.a, -g * prior.c, -g * prior.d, g * prior.b)


def hessian_I_in_kappa(prior: JointPrior, enc: SymmetricEncoder, dy: DecoderY) -> Matrix2:
    enc = require_symmetric(enc)
    jac = jacobian_P_in_kappa(prior, dy.d1, dy.d2)
    if jac == Matrix2(0.0, 0.0, 0.0, 0.0):
        return jac
    P1, P2 = _masses(prior, enc, dy)
    m = jac.T @ hessian_I_in_P(P1, P2, prior.q1) @ jac
    off = 0.5 * (m.m12 + m.m21)
    return Matrix2(m.m11, off, off, m.m22)


def is_positive_semidefinite(m: Matrix2, tol: float = 1e-9) -> bool:
    if abs(m.m12 - m.m21) > tol:
        raise NotSymmetric(f"off-diagonals differ: {m.m12!r} vs {m.m21!r}")
    return m.eigenvalues()[0] >= -tol
