"""Stackelberg and pure-Nash equilibria of the binary privacy game.

Both solvers work with symmetric encoders only. The y-decoder always
best-responds with 01 or 10 (identical payoffs), so it is reported as that
equivalence class plus a tie-broken representative.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .best_response import (
    LEX,
    TIE_TOL,
    TieBreak,
    decoder_x_best_response,
    decoder_y_best_response,
    optimal_distortion,
)
from .model import (
    LABELS,
    DecoderX,
    DecoderY,
    JointPrior,
    SymmetricEncoder,
    coords_label,
    label_coords,
    theta,
)
from .objectives import PayoffPair, binary_entropy, evaluate, mutual_information, xlog2x

Y_CLASS = ("01", "10")

C1 = "C1"
C2_SMALL = "C2-small-rho"
C2_LARGE = "C2-large-rho"
NO_PURE_NASH = "NoPureNash"
DEGENERATE_UNIFORM = "DegenerateUniform"


def m_constant(prior: JointPrior) -> float:
    """H_b(a+b) + sum of p log p over the prior; never positive."""
    return binary_entropy(prior.a + prior.b) + sum(xlog2x(p) for p in prior.as_tuple())


def marginal_pair_is_min(prior: JointPrior, tol: float = TIE_TOL) -> bool:
    """True when min{a+b, c+d, a+d, b+c} is attained by a+b or c+d."""
    a, b, c, d = prior.as_tuple()
    low = min(a + b, c + d, a + d, b + c)
    return min(a + b, c + d) <= low + tol


@dataclass(frozen=True)
class NormalFormTable:
    """Encoder rows x x-decoder columns, each cell holding
    (encoder payoff minus H_b(q1), distortion) with the y-decoder at 10."""

    cells: dict
    M: float
    rho: float

    def __getitem__(self, key: tuple[str, str]) -> tuple[float, float]:
        return self.cells[key]


def normal_form_table(prior: JointPrior, rho: float) -> NormalFormTable:
    a, b, c, d = prior.as_tuple()
    M = m_constant(prior)
    ab, cd, ad, bc = a + b, c + d, a + d, b + c
    dist = {
        "00": {"00": ab, "01": 0.0, "10": 1.0, "11": cd},
        "01": {"00": ab, "01": bc, "10": ad, "11": cd},
        "10": {"00": ab, "01": ad, "10": bc, "11": cd},
        "11": {"00": ab, "01": 1.0, "10": 0.0, "11": cd},
    }
    info = {"00": M, "01": 0.0, "10": 0.0, "11": M}
    cells = {
        (r, col): (info[r] + rho * dist[r][col], dist[r][col])
        for r in LABELS
        for col in LABELS
    }
    return NormalFormTable(cells=cells, M=M, rho=rho)


def pure_equilibria(table: NormalFormTable, tol: float = TIE_TOL) -> list[tuple[str, str]]:
    """Cells where the row is a best reply in its column (maximizing the
    first coordinate) and the column a best reply in its row (minimizing
    the second)."""
    found = []
    for r in LABELS:
        for col in LABELS:
            payoff, dist = table[r, col]
            col_best = max(table[rr, col][0] for rr in LABELS)
            row_best = min(table[r, cc][1] for cc in LABELS)
            if payoff >= col_best - tol and dist <= row_best + tol:
                found.append((r, col))
    return found


@dataclass(frozen=True)
class Profile:
    encoder: SymmetricEncoder
    encoder_label: Optional[str]
    decoder_y: str
    decoder_y_class: tuple[str, ...]
    decoder_x: str
    decoder_x_ties: tuple[str, ...]
    payoffs: PayoffPair

    def to_dict(self) -> dict:
        return {
            "kappa": [self.encoder.k1, self.encoder.k2],
            "kappa_label": self.encoder_label,
            "delta": self.decoder_y,
            "delta_class": list(self.decoder_y_class),
            "epsilon": self.decoder_x,
            "epsilon_ties": list(self.decoder_x_ties),
            **self.payoffs.as_dict(),
        }


@dataclass(frozen=True)
class EquilibriumResult:
    kind: str  # "Stackelberg", "Nash" or "none"
    case: str
    prior: JointPrior
    rho: float
    profiles: tuple[Profile, ...] = ()
    chosen: Optional[Profile] = None
    extra: dict = field(default_factory=dict)

    @property
    def exists(self) -> bool:
        return bool(self.profiles)

    @property
    def payoffs(self) -> Optional[PayoffPair]:
        return None if self.chosen is None else self.chosen.payoffs

    def labels(self) -> set[tuple[Optional[str], str]]:
        return {(p.encoder_label, p.decoder_x) for p in self.profiles}

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "case": self.case,
            "prior": list(self.prior.as_tuple()),
            "rho": self.rho,
            "profiles": [p.to_dict() for p in self.profiles],
        }
        if self.chosen is not None:
            out.update(self.chosen.payoffs.as_dict())
            out["chosen"] = self.profiles.index(self.chosen)
        out.update(self.extra)
        return out


def _profile(prior, enc, delta, delta_class, eps, eps_ties, rho) -> Profile:
    pay = evaluate(prior, enc, DecoderY(*label_coords(delta)), DecoderX(*label_coords(eps)), rho)
    return Profile(
        encoder=enc,
        encoder_label=coords_label(enc.k1, enc.k2),
        decoder_y=delta,
        decoder_y_class=tuple(delta_class),
        decoder_x=eps,
        decoder_x_ties=tuple(eps_ties),
        payoffs=pay,
    )


def nash_solve(prior: JointPrior, rho: float, tb: TieBreak = LEX) -> EquilibriumResult:
    """Enumerate pure Nash equilibria of the 4x4 normal form.

    Equal priors are flagged DegenerateUniform (excluded from the
    existence result); the cells found by enumeration are still reported.
    """
    table = normal_form_table(prior, rho)
    rng = None if tb.is_lexicographic else random.Random(tb.seed)
    profiles = []
    for r, col in pure_equilibria(table):
        delta = tb.pick(Y_CLASS, rng)
        profiles.append(
            _profile(prior, SymmetricEncoder(*label_coords(r)), delta, Y_CLASS, col, (col,), rho)
        )
    profiles = tuple(profiles)
    extra = {"M": table.M}
    if prior.is_uniform():
        case = DEGENERATE_UNIFORM
    elif profiles:
        case = C1
    else:
        case = NO_PURE_NASH
    if not profiles:
        return EquilibriumResult("none", case, prior, rho, extra=extra)
    chosen = tb.pick(profiles, rng)
    return EquilibriumResult("Nash", case, prior, rho, profiles, chosen, extra)


def stackelberg_candidates(prior: JointPrior) -> list[SymmetricEncoder]:
    """Vertices of the regions on which the leader's payoff is convex.

    The follower's distortion min{a+b, c+d, theta, 1-theta} is linear in
    theta between the kinks theta = a+b and theta = c+d, so the candidates
    are the square's corners plus every crossing of those lines (and their
    mirror images 1 - a - b, 1 - c - d, which coincide) with its edges.
    """
    a, b, c, d = prior.as_tuple()
    w1, w2 = a + d, b + c
    points = [label_coords(lab) for lab in LABELS]
    levels = sorted({a + b, c + d, 1.0 - (a + b), 1.0 - (c + d)})
    for v in levels:
        if w2 > 0.0:
            points.append((0.0, v / w2))
            points.append((1.0, (v - w1) / w2))
        if w1 > 0.0:
            points.append((v / w1, 0.0))
            points.append(((v - w2) / w1, 1.0))
    out: list[SymmetricEncoder] = []
    for k1, k2 in points:
        if not (-1e-12 <= k1 <= 1.0 + 1e-12 and -1e-12 <= k2 <= 1.0 + 1e-12):
            continue
        k1 = min(max(k1, 0.0), 1.0)
        k2 = min(max(k2, 0.0), 1.0)
        if any(abs(k1 - e.k1) <= 1e-12 and abs(k2 - e.k2) <= 1e-12 for e in out):
            continue
        out.append(SymmetricEncoder(k1, k2))
    return out


def leader_payoff(prior: JointPrior, enc: SymmetricEncoder, rho: float) -> tuple[float, float]:
    """(I, E) when both decoders best-respond to ``enc``."""
    info = mutual_information(prior, enc, DecoderY(1.0, 0.0))
    return info, optimal_distortion(prior, theta(prior, enc))


def stackelberg_solve(prior: JointPrior, rho: float, tb: TieBreak = LEX) -> EquilibriumResult:
    if rho < 0:
        raise ValueError(f"privacy weight rho must be >= 0, got {rho!r}")
    cands = stackelberg_candidates(prior)
    values = []
    for enc in cands:
        info, dist = leader_payoff(prior, enc, rho)
        values.append(info + rho * dist)
    best = max(values)
    winners = [enc for enc, v in zip(cands, values) if v >= best - TIE_TOL]

    rng = None if tb.is_lexicographic else random.Random(tb.seed)
    profiles = []
    for enc in winners:
        dy_br = decoder_y_best_response(prior, enc, tb)
        dx_br = decoder_x_best_response(prior, enc)
        delta_class = tuple(lab for lab in dy_br.optima if lab in Y_CLASS) or dy_br.optima
        delta = tb.pick(delta_class, rng)
        profiles.append(_profile(prior, enc, delta, delta_class, dx_br.chosen, dx_br.optima, rho))
    profiles = tuple(profiles)

    if marginal_pair_is_min(prior):
        case = C1
    elif any(p.encoder_label in Y_CLASS for p in profiles):
        case = C2_SMALL
    else:
        case = C2_LARGE
    chosen = tb.pick(profiles, rng)
    return EquilibriumResult(
        "Stackelberg", case, prior, rho, profiles, chosen, {"value": best, "candidates": len(cands)}
    )
