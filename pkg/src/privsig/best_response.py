"""Best responses of the encoder and both decoders over extreme points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    LABELS,
    DecoderX,
    DecoderY,
    JointPrior,
    SymmetricEncoder,
    label_coords,
    require_symmetric,
    theta,
)
from .objectives import evaluate, mutual_information

TIE_TOL = 1e-9


@dataclass(frozen=True)
class TieBreak:
    """How to pick one optimum out of several.

    ``seed=None`` is lexicographic: the first option in the order given
    (the callers always pass labels in 00, 01, 10, 11 order). Otherwise a
    uniform pick driven by ``random.Random(seed)``, or by an explicit
    generator when a sweep threads one through many calls.
    """

    seed: Optional[int] = None

    @classmethod
    def lexicographic(cls) -> TieBreak:
        return cls(None)

    @classmethod
    def seeded(cls, seed: int) -> TieBreak:
        return cls(int(seed))

    @classmethod
    def parse(cls, text: str) -> TieBreak:
        """Parse ``lex`` or ``seed:<N>``."""
        text = text.strip().lower()
        if text in ("lex", "lexicographic"):
            return cls.lexicographic()
        if text.startswith("seed:"):
            return cls.seeded(int(text.split(":", 1)[1]))
        raise ValueError(f"tie-break must be 'lex' or 'seed:<N>', got {text!r}")

    @property
    def is_lexicographic(self) -> bool:
        return self.seed is None

    def pick(self, options: Sequence, rng: Optional[random.Random] = None):
        if not options:
            raise ValueError("no options to pick from")
        if self.seed is None:
            return options[0]
        rng = rng if rng is not None else random.Random(self.seed)
        return options[rng.randrange(len(options))]

    def __str__(self) -> str:
        return "lex" if self.seed is None else f"seed:{self.seed}"


LEX = TieBreak.lexicographic()


@dataclass(frozen=True)
class BestResponse:
    chosen: str
    optima: tuple[str, ...]
    value: float


def _select(values: dict[str, float], tb: TieBreak, maximize: bool = True) -> BestResponse:
    best = max(values.values()) if maximize else min(values.values())
    optima = tuple(
        lab for lab in LABELS if abs(values[lab] - best) <= TIE_TOL
    )
    return BestResponse(chosen=tb.pick(optima), optima=optima, value=best)


def encoder_best_response(
    prior: JointPrior, dy: DecoderY, dx: DecoderX, rho: float, tb: TieBreak = LEX
) -> BestResponse:
    """Maximize the encoder payoff over the four symmetric-encoder vertices.

    The payoff is jointly convex in (kappa1, kappa2), so a vertex is optimal.
    """
    values = {
        lab: evaluate(prior, SymmetricEncoder(*label_coords(lab)), dy, dx, rho).encoder_payoff
        for lab in LABELS
    }
    return _select(values, tb)


def decoder_y_best_response(
    prior: JointPrior, enc: SymmetricEncoder, tb: TieBreak = LEX
) -> BestResponse:
    """Maximize I(y; yhat) over the four y-decoder vertices.

    01 and 10 always tie (every t_i maps to 1 - t_i); when z says nothing
    about y all four tie at zero.
    """
    enc = require_symmetric(enc)
    values = {
        lab: mutual_information(prior, enc, DecoderY(*label_coords(lab))) for lab in LABELS
    }
    return _select(values, tb)


def decoder_x_rows(prior: JointPrior, th: float, tol: float = TIE_TOL) -> tuple[str, ...]:
    """Labels of every row of the distortion-minimizing table whose
    condition holds at ``th``, in printed order."""
    ab = prior.a + prior.b
    cd = prior.c + prior.d
    rows = []
    if ab - tol <= th <= cd + tol:
        rows.append("00")
    if th <= ab + tol and th <= cd + tol:
        rows.append("01")
    if th >= ab - tol and th >= cd - tol:
        rows.append("10")
    if ab + tol >= th >= cd - tol:
        rows.append("11")
    return tuple(rows)


def optimal_distortion(prior: JointPrior, th: float) -> float:
    return min(prior.a + prior.b, prior.c + prior.d, th, 1.0 - th)


def decoder_x_best_response(prior: JointPrior, enc: SymmetricEncoder) -> BestResponse:
    """Distortion-minimizing x-decoder via the theta threshold table.

    ``chosen`` is the first matching row; ``optima`` lists every matching
    row (all achieve the same distortion).
    """
    enc = require_symmetric(enc)
    th = theta(prior, enc)
    rows = decoder_x_rows(prior, th)
    return BestResponse(chosen=rows[0], optima=rows, value=optimal_distortion(prior, th))
