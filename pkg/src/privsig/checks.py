"""Randomized invariant suites behind ``privsig check``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .analysis import hessian_I_in_kappa, hessian_I_in_P, is_positive_semidefinite
from .best_response import decoder_x_best_response
from .equilibrium import marginal_pair_is_min, nash_solve, stackelberg_solve
from .model import DecoderY, PrivsigError, GeneralEncoder, JointPrior, SymmetricEncoder
from .objectives import mutual_information, mutual_information_oracle
from .oracle import nash_oracle, payoff_surface


def random_prior(rng: np.random.Generator, floor: float = 0.0) -> JointPrior:
    """Uniform draw from the simplex, optionally kept ``floor`` away from its faces."""
    p = rng.dirichlet(np.ones(4))
    p = floor + (1.0 - 4 * floor) * p
    return JointPrior(*(float(v) for v in p))


def fd_hessian(f: Callable[[float, float], float], x: float, y: float, h: float) -> np.ndarray:
    """Central second differences of ``f`` at (x, y)."""
    fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h**2
    fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h**2
    fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h)
    return np.array([[fxx, fxy], [fxy, fyy]])


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def oracle_equivalence(rng, trials: int, tol: float) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        prior = random_prior(rng)
        enc = GeneralEncoder(*rng.random(4))
        dy = DecoderY(*rng.random(2))
        worst = max(worst, abs(mutual_information(prior, enc, dy) - mutual_information_oracle(prior, enc, dy)))
    return SuiteResult("oracle-equivalence", bool(worst <= tol), f"max |closed - pmf| = {worst:.3e}")


def psd(rng, trials: int, tol: float) -> SuiteResult:
    worst = np.inf
    for _ in range(trials):
        q1 = rng.uniform(0.05, 0.95)
        P1 = rng.uniform(0.01, 0.99) * q1
        P2 = rng.uniform(0.01, 0.99) * (1 - q1)
        worst = min(worst, hessian_I_in_P(P1, P2, q1).eigenvalues()[0])
        prior = random_prior(rng, floor=0.02)
        m = hessian_I_in_kappa(prior, SymmetricEncoder(*rng.uniform(0.05, 0.95, 2)), DecoderY(*rng.random(2)))
        if not is_positive_semidefinite(m, tol):
            worst = min(worst, m.eigenvalues()[0])
    return SuiteResult("psd", bool(worst >= -tol), f"min eigenvalue = {worst:.3e}")


def finite_difference(rng, trials: int, rel_tol: float = 1e-4, h: float = 1e-4) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        prior = random_prior(rng, floor=0.05)
        k = rng.uniform(0.1, 0.9, 2)
        d1, d2 = rng.random(2)
        if abs(d1 - d2) < 0.2:
            d2 = (d1 + 0.5) % 1.0
        dy = DecoderY(d1, d2)
        exact = np.array(hessian_I_in_kappa(prior, SymmetricEncoder(*k), dy).as_rows())
        num = fd_hessian(lambda u, v: mutual_information(prior, SymmetricEncoder(u, v), dy), k[0], k[1], h)
        worst = max(worst, np.linalg.norm(exact - num) / np.linalg.norm(exact))
    return SuiteResult("finite-difference", bool(worst <= rel_tol), f"max relative error = {worst:.3e}")


def best_response_extremality(rng, trials: int, tol: float, grid_n: int = 50) -> SuiteResult:
    grid = kernels.square_grid(grid_n)
    worst_enc = worst_x = -np.inf
    for _ in range(trials):
        prior = random_prior(rng)
        dec = rng.random(4)
        rho = rng.uniform(0, 5)
        pv = prior.as_tuple()
        corners = kernels.encoder_payoffs(pv, rho, dec, kernels.CORNERS).max()
        worst_enc = max(worst_enc, kernels.encoder_payoffs(pv, rho, dec, grid).max() - corners)
        enc = SymmetricEncoder(*rng.random(2))
        table = decoder_x_best_response(prior, enc).value
        alt = kernels.distortion_grid(pv, [[enc.k1, enc.k2]], grid).min()
        worst_x = max(worst_x, table - alt)
    ok = bool(worst_enc <= tol and worst_x <= tol)
    return SuiteResult(
        "best-response-extremality",
        ok,
        f"grid beats best vertex by {worst_enc:.3e}; grid beats threshold table by {worst_x:.3e}",
    )


def solver_vs_oracle(rng, trials: int, grid_n: int = 21) -> SuiteResult:
    bad = []
    for i in range(trials):
        prior = random_prior(rng)
        for rho in (0.5, 1.0, 2.0, 20.0):
            solved = nash_solve(prior, rho)
            brute = nash_oracle(prior, rho, grid_n)
            if solved.exists != brute.exists or solved.exists != marginal_pair_is_min(prior):
                bad.append((i, rho, "nash"))
            st = stackelberg_solve(prior, rho).chosen.payoffs.encoder_payoff
            surface = max(r.encoder_payoff for r in payoff_surface(prior, rho, grid_n))
            if st < surface - 1e-6:
                bad.append((i, rho, "stackelberg"))
    return SuiteResult("solver-vs-oracle", not bad, f"{trials} priors x 4 rho, {len(bad)} mismatches")


def _guarded(name: str, fn, *args) -> SuiteResult:
    try:
        return fn(*args)
    except PrivsigError as exc:
        return SuiteResult(name, False, f"{type(exc).__name__}: {exc}")


def run_all(trials: int, seed: int, tol: float) -> list[SuiteResult]:
    """Run every suite. The finite-difference and solver suites are capped
    (100 and trials // 10 draws) since each draw is comparatively costly."""
    rng = np.random.default_rng(seed)
    return [
        _guarded("oracle-equivalence", oracle_equivalence, rng, trials, tol),
        _guarded("psd", psd, rng, trials, tol),
        _guarded("finite-difference", finite_difference, rng, min(trials, 100)),
        _guarded("best-response-extremality", best_response_extremality, rng, min(trials, 200), tol),
        _guarded("solver-vs-oracle", solver_vs_oracle, rng, max(1, trials // 10)),
    ]
