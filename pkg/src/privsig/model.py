"""Priors, strategies and the derived masses every payoff formula consumes.

Column order for the source pair is (x, y) = (0,0), (0,1), (1,0), (1,1),
i.e. the prior entries a, b, c, d and the encoder parameters kappa1..kappa4
line up one-to-one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

PROB_TOL = 1e-9
NOISE_TOL = 1e-12


class PrivsigError(ValueError):
    """Base class for validation errors raised by this package."""


class NegativeMass(PrivsigError):
    pass


class NotNormalized(PrivsigError):
    pass


class OutOfRange(PrivsigError):
    pass


class DegenerateMarginal(PrivsigError):
    pass


class BoundaryPoint(PrivsigError):
    pass


class NotSymmetric(PrivsigError):
    pass


def check_prob(value: float, name: str = "value") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise OutOfRange(f"{name}={value!r} is outside [0, 1]")
    return value


@dataclass(frozen=True)
class JointPrior:
    """Joint pmf of (x, y): a=P(0,0), b=P(0,1), c=P(1,0), d=P(1,1)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        values = []
        for name in "abcd":
            v = float(getattr(self, name))
            if v < -NOISE_TOL:
                raise NegativeMass(f"{name}={v!r} is negative")
            if v < 0.0:
                v = 0.0
            if v > 1.0 + NOISE_TOL:
                raise OutOfRange(f"{name}={v!r} exceeds 1")
            object.__setattr__(self, name, min(v, 1.0))
            values.append(v)
        total = sum(values)
        if abs(total - 1.0) > PROB_TOL:
            raise NotNormalized(f"a+b+c+d = {total!r}, expected 1")

    @property
    def q1(self) -> float:
        """P(y = 0)."""
        return self.a + self.c

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def is_uniform(self, tol: float = PROB_TOL) -> bool:
        return all(abs(v - 0.25) <= tol for v in self.as_tuple())


def make_prior(a: float, b: float, c: float, d: float | None = None) -> JointPrior:
    """Build a prior, deriving ``d = 1 - (a + b + c)`` when it is omitted.

    A supplied ``d`` is validated against the normalization, never
    overwritten.
    """
    a, b, c = float(a), float(b), float(c)
    for name, v in zip("abc", (a, b, c)):
        if v < -NOISE_TOL:
            raise NegativeMass(f"{name}={v!r} is negative")
    if d is None:
        d = 1.0 - (a + b + c)
        if d < -NOISE_TOL:
            raise NotNormalized(f"a+b+c = {a + b + c!r} exceeds 1 (derived d = {d!r})")
    return JointPrior(a, b, c, float(d))


@dataclass(frozen=True)
class SymmetricEncoder:
    """Encoder restricted to kappa3 = 1 - kappa2 and kappa4 = 1 - kappa1."""

    k1: float
    k2: float

    def __post_init__(self):
        object.__setattr__(self, "k1", check_prob(self.k1, "kappa1"))
        object.__setattr__(self, "k2", check_prob(self.k2, "kappa2"))

    @property
    def kappas(self) -> tuple[float, float, float, float]:
        return (self.k1, self.k2, 1.0 - self.k2, 1.0 - self.k1)

    def to_general(self) -> GeneralEncoder:
        return GeneralEncoder(*self.kappas)


@dataclass(frozen=True)
class GeneralEncoder:
    """Unrestricted encoder; kappa_i = P(z = 0 | column i)."""

    k1: float
    k2: float
    k3: float
    k4: float

    def __post_init__(self):
        for i, name in enumerate(("k1", "k2", "k3", "k4"), start=1):
            object.__setattr__(self, name, check_prob(getattr(self, name), f"kappa{i}"))

    @property
    def kappas(self) -> tuple[float, float, float, float]:
        return (self.k1, self.k2, self.k3, self.k4)


EncoderStrategy = Union[SymmetricEncoder, GeneralEncoder]


def symmetric_to_general(k1: float, k2: float) -> GeneralEncoder:
    return SymmetricEncoder(k1, k2).to_general()


def require_symmetric(enc: EncoderStrategy) -> SymmetricEncoder:
    if not isinstance(enc, SymmetricEncoder):
        raise TypeError(
            f"a SymmetricEncoder is required here, got {type(enc).__name__}"
        )
    return enc


@dataclass(frozen=True)
class DecoderY:
    """delta1 = P(yhat=0 | z=0), delta2 = P(yhat=0 | z=1)."""

    d1: float
    d2: float

    def __post_init__(self):
        object.__setattr__(self, "d1", check_prob(self.d1, "delta1"))
        object.__setattr__(self, "d2", check_prob(self.d2, "delta2"))


@dataclass(frozen=True)
class DecoderX:
    """eps1 = P(xhat=0 | z=0), eps2 = P(xhat=0 | z=1)."""

    e1: float
    e2: float

    def __post_init__(self):
        object.__setattr__(self, "e1", check_prob(self.e1, "epsilon1"))
        object.__setattr__(self, "e2", check_prob(self.e2, "epsilon2"))


@dataclass(frozen=True)
class DerivedQuantities:
    q1: float
    t: tuple[float, float, float, float]
    n: tuple[float, float, float, float]
    P1: float
    P2: float
    theta: float


def theta(prior: JointPrior, enc: EncoderStrategy) -> float:
    """Mass the x-decoder weighs: kappa1 (a + d) + kappa2 (b + c)."""
    return enc.k1 * (prior.a + prior.d) + enc.k2 * (prior.b + prior.c)


def derived_quantities(
    prior: JointPrior, enc: EncoderStrategy, dy: DecoderY, dx: DecoderX
) -> DerivedQuantities:
    kap = enc.kappas
    t = tuple(dy.d1 * k + dy.d2 * (1.0 - k) for k in kap)
    n = tuple(dx.e1 * k + dx.e2 * (1.0 - k) for k in kap)
    a, b, c, d = prior.as_tuple()
    return DerivedQuantities(
        q1=prior.q1,
        t=t,
        n=n,
        P1=a * t[0] + c * t[2],
        P2=b * t[1] + d * t[3],
        theta=theta(prior, enc),
    )


LABELS = ("00", "01", "10", "11")


def label_coords(label: str) -> tuple[float, float]:
    """Map an extreme-point label like ``"01"`` to ``(0.0, 1.0)``."""
    if label not in LABELS:
        raise ValueError(f"unknown extreme label {label!r}")
    return (float(label[0]), float(label[1]))


def coords_label(u: float, v: float) -> str | None:
    """Inverse of :func:`label_coords`; None for a non-vertex point."""
    if u in (0.0, 1.0) and v in (0.0, 1.0):
        return f"{int(u)}{int(v)}"
    return None
