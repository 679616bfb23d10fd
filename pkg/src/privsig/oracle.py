"""Brute-force grid sweeps: best-response histograms, payoff surfaces and an
exhaustive pure-Nash deviation check.

These never consult the analytic solvers; they evaluate payoffs on grids
and compare. Grids are inclusive of 0 and 1 and always contain the four
extreme points, so ties against the solvers are exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .best_response import (
    LEX,
    TIE_TOL,
    TieBreak,
    decoder_x_best_response,
    decoder_y_best_response,
)
from .model import LABELS, DecoderX, DecoderY, JointPrior, SymmetricEncoder, label_coords
from .objectives import evaluate

INTERIOR = "interior"
INDIFFERENT = "indifferent"
SAFETY_GRID = 21


@dataclass
class Histogram:
    """Winner counts per extreme label.

    ``interior`` counts trials where a non-vertex grid point strictly beat
    every vertex; ``indifferent`` counts trials where the objective was flat
    over the whole scan, so no winner exists. Neither is an extreme label,
    so neither enters :attr:`support`.
    """

    counts: Counter = field(default_factory=Counter)
    total: int = 0

    @property
    def support(self) -> set[str]:
        return {lab for lab in LABELS if self.counts.get(lab, 0) > 0}

    def to_dict(self) -> dict:
        keys = list(LABELS) + [INTERIOR, INDIFFERENT]
        return {"counts": {k: int(self.counts.get(k, 0)) for k in keys}, "total": self.total}


@dataclass(frozen=True)
class SweepRow:
    kappa1: float
    kappa2: float
    mutual_info: float
    distortion: float
    encoder_payoff: float
    decoder_payoff: float


def _pick_rows(mask: np.ndarray, tb: TieBreak, rng: Optional[np.random.Generator]) -> np.ndarray:
    """Column index of the chosen True entry in each row of ``mask``."""
    if tb.is_lexicographic:
        return np.argmax(mask, axis=1)
    count = mask.sum(axis=1)
    draw = np.floor(rng.random(len(mask)) * count).astype(int)
    # index of the (draw+1)-th True in each row
    rank = np.cumsum(mask, axis=1) - 1
    hit = mask & (rank == draw[:, None])
    return np.argmax(hit, axis=1)


def _bin(hist: Histogram, corner_vals, scan_max, scan_min, tb, rng, maximize=True):
    if not maximize:
        corner_vals, scan_max, scan_min = -corner_vals, -scan_min, -scan_max
    flat = scan_max - scan_min <= TIE_TOL
    corner_best = corner_vals.max(axis=1)
    interior = scan_max > corner_best + TIE_TOL
    mask = corner_vals >= scan_max[:, None] - TIE_TOL
    winners = _pick_rows(mask, tb, rng)
    decided = ~flat & ~interior
    for idx, n in zip(*np.unique(winners[decided], return_counts=True)):
        hist.counts[LABELS[idx]] += int(n)
    hist.counts[INTERIOR] += int((interior & ~flat).sum())
    hist.counts[INDIFFERENT] += int(flat.sum())
    hist.total += len(corner_vals)


def decoder_grid(n: int) -> np.ndarray:
    """(n**4, 4) rows (delta1, delta2, eps1, eps2) on an inclusive grid."""
    g = np.linspace(0.0, 1.0, n)
    mesh = np.meshgrid(g, g, g, g, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def _rng(tb: TieBreak) -> Optional[np.random.Generator]:
    return None if tb.is_lexicographic else np.random.default_rng(tb.seed)


def grid_encoder_br_histogram(
    prior: JointPrior,
    rho: float,
    decoder_grid_n: int = 20,
    tb: TieBreak = LEX,
    safety_n: int = SAFETY_GRID,
    chunk: int = 20000,
) -> Histogram:
    """Bin the encoder's payoff-maximizing strategy for every decoder pair
    on a ``decoder_grid_n**4`` grid, scanning the vertices plus a
    ``safety_n x safety_n`` grid of the square."""
    if decoder_grid_n < 2:
        raise ValueError("decoder_grid_n must be >= 2")
    dec = decoder_grid(decoder_grid_n)
    scan = kernels.square_grid(safety_n)
    pv = prior.as_tuple()
    rng = _rng(tb)
    hist = Histogram()
    for start in range(0, len(dec), chunk):
        block = dec[start:start + chunk]
        corner_vals = kernels.encoder_payoffs(pv, rho, block, kernels.CORNERS)
        hi, lo = kernels.encoder_payoff_extrema(pv, rho, block, scan)
        hi = np.maximum(hi, corner_vals.max(axis=1))
        lo = np.minimum(lo, corner_vals.min(axis=1))
        _bin(hist, corner_vals, hi, lo, tb, rng)
    return hist


def grid_decoder_br_histograms(
    prior: JointPrior,
    encoder_grid_n: int = 100,
    tb: TieBreak = LEX,
    scan_n: int = SAFETY_GRID,
) -> tuple[Histogram, dict[tuple[float, float], str]]:
    """For every encoder point on an ``encoder_grid_n**2`` grid: histogram
    of the y-decoder's I-maximizing strategy (scanned over a grid of
    (delta1, delta2)) and the x-decoder's distortion-minimizing vertex.

    The x-decoder objective is affine, so its minimum over the square is at
    a vertex; ties go to the first vertex in 00, 01, 10, 11 order.
    """
    if encoder_grid_n < 2:
        raise ValueError("encoder_grid_n must be >= 2")
    kap = kernels.square_grid(encoder_grid_n)
    pv = prior.as_tuple()
    scan = kernels.square_grid(scan_n)
    corner_vals = kernels.mutual_info_grid(pv, kap, kernels.CORNERS)
    grid_vals = kernels.mutual_info_grid(pv, kap, scan)
    hi = np.maximum(grid_vals.max(axis=1), corner_vals.max(axis=1))
    lo = np.minimum(grid_vals.min(axis=1), corner_vals.min(axis=1))
    delta_hist = Histogram()
    _bin(delta_hist, corner_vals, hi, lo, tb, _rng(tb))

    dist = kernels.distortion_grid(pv, kap, kernels.CORNERS)
    best = dist.min(axis=1)
    first = np.argmax(dist <= best[:, None] + TIE_TOL, axis=1)
    eps_map = {(float(k1), float(k2)): LABELS[i] for (k1, k2), i in zip(kap, first)}
    return delta_hist, eps_map


def payoff_surface(
    prior: JointPrior,
    rho: float,
    grid_n: int,
    follower: Optional[tuple[DecoderY, DecoderX]] = None,
    tb: TieBreak = LEX,
) -> list[SweepRow]:
    """Payoffs over an inclusive ``grid_n x grid_n`` encoder grid, kappa1
    outer. With ``follower=None`` both decoders best-respond pointwise."""
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    rows = []
    g = np.linspace(0.0, 1.0, grid_n)
    for k1 in g:
        for k2 in g:
            enc = SymmetricEncoder(float(k1), float(k2))
            if follower is None:
                dy = DecoderY(*label_coords(decoder_y_best_response(prior, enc, tb).chosen))
                dx = DecoderX(*label_coords(decoder_x_best_response(prior, enc).chosen))
            else:
                dy, dx = follower
            p = evaluate(prior, enc, dy, dx, rho)
            rows.append(
                SweepRow(enc.k1, enc.k2, p.mutual_info, p.distortion, p.encoder_payoff, p.decoder_payoff)
            )
    return rows


@dataclass(frozen=True)
class NashOracleResult:
    exists: bool
    profiles: tuple[tuple[str, str], ...]


def nash_oracle(prior: JointPrior, rho: float, grid_n: int = 21) -> NashOracleResult:
    """Check all 16 (encoder vertex, x-decoder vertex) profiles for profitable
    unilateral deviations over full ``grid_n x grid_n`` deviation grids.

    The y-decoder sits at 10 and at 01; a profile survives only if it is
    stable with both representatives.
    """
    pv = prior.as_tuple()
    grid = kernels.square_grid(grid_n)
    survivors = []
    for kl in LABELS:
        kap = np.array([label_coords(kl)])
        info_dev = kernels.mutual_info_grid(pv, kap, grid)[0].max()
        dist_dev = kernels.distortion_grid(pv, kap, grid)[0].min()
        for el in LABELS:
            stable = True
            for dl in ("10", "01"):
                enc = SymmetricEncoder(*label_coords(kl))
                dy = DecoderY(*label_coords(dl))
                dx = DecoderX(*label_coords(el))
                here = evaluate(prior, enc, dy, dx, rho)
                dec = np.array([[dy.d1, dy.d2, dx.e1, dx.e2]])
                enc_dev = kernels.encoder_payoffs(pv, rho, dec, grid)[0].max()
                if enc_dev > here.encoder_payoff + TIE_TOL:
                    stable = False
                # decoder objective I - E separates over (delta, eps)
                if info_dev - dist_dev > here.decoder_payoff + TIE_TOL:
                    stable = False
            if stable:
                survivors.append((kl, el))
    return NashOracleResult(bool(survivors), tuple(survivors))
