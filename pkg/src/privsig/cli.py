"""Command-line front end.

Exit codes: 0 success, 1 a ``check`` suite failed, 2 invalid arguments,
3 output could not be written.

Examples::

    privsig eval --prior 0.3,0.1,0.2 --enc 0,1 --dec-y 1,0 --dec-x 0,1 --rho 1
    privsig stackelberg --prior 0.3,0.1,0.2 --rho 20
    privsig nash --prior 0.1,0.2,0.3 --rho 1
    privsig sweep --prior 0.3,0.1,0.2 --rho 2 --encoder-grid 101 --out surface.csv
    privsig br-hist --prior 0.3,0.1,0.2 --rho 1 --decoder-grid 20 --encoder-grid 100
    privsig check --trials 1000 --seed 42
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .best_response import (
    TieBreak,
    decoder_x_best_response,
    decoder_y_best_response,
    encoder_best_response,
)
from .checks import run_all
from .equilibrium import nash_solve, stackelberg_solve
from .model import DecoderX, DecoderY, GeneralEncoder, JointPrior, PrivsigError, SymmetricEncoder, make_prior
from .objectives import evaluate
from .oracle import grid_decoder_br_histograms, grid_encoder_br_histogram, payoff_surface

SWEEP_HEADER = ["kappa1", "kappa2", "mutual_info", "distortion", "encoder_payoff", "decoder_payoff"]


class UsageError(Exception):
    """Invalid flag value; message names the flag."""


class OutputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    prior: JointPrior
    rho: float
    encoder_grid: int
    decoder_grid: int
    tie_break: TieBreak
    tol: float
    out: Optional[str]
    fmt: str


def _floats(text: str, flag: str, sizes: tuple[int, ...]) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None
    if len(values) not in sizes:
        raise UsageError(f"{flag}: expected {' or '.join(map(str, sizes))} values, got {len(values)}")
    return values


def _strategy(cls, text: Optional[str], flag: str):
    if text is None:
        raise UsageError(f"{flag} is required for this command")
    try:
        return cls(*_floats(text, flag, (2,)))
    except PrivsigError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _encoder(text: Optional[str]):
    if text is None:
        raise UsageError("--enc is required for this command")
    values = _floats(text, "--enc", (2, 4))
    try:
        return SymmetricEncoder(*values) if len(values) == 2 else GeneralEncoder(*values)
    except PrivsigError as exc:
        raise UsageError(f"--enc: {exc}") from None


def build_config(args) -> RunConfig:
    try:
        prior = make_prior(*_floats(args.prior, "--prior", (3, 4)))
    except PrivsigError as exc:
        raise UsageError(f"--prior: {type(exc).__name__}: {exc}") from None
    if args.rho < 0:
        raise UsageError(f"--rho: must be >= 0, got {args.rho}")
    for flag, n in (("--encoder-grid", args.encoder_grid), ("--decoder-grid", args.decoder_grid)):
        if n < 2:
            raise UsageError(f"{flag}: must be >= 2, got {n}")
    if not 0.0 < args.tol <= 1e-3:
        raise UsageError(f"--tol: must lie in (0, 1e-3], got {args.tol}")
    try:
        tb = TieBreak.parse(args.tie_break)
    except ValueError as exc:
        raise UsageError(f"--tie-break: {exc}") from None
    return RunConfig(prior, args.rho, args.encoder_grid, args.decoder_grid, tb, args.tol, args.out, args.format)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc}") from None


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_eval(cfg: RunConfig, args) -> int:
    enc = _encoder(args.enc)
    dy = _strategy(DecoderY, args.dec_y, "--dec-y")
    dx = _strategy(DecoderX, args.dec_x, "--dec-x")
    _emit(_json(evaluate(cfg.prior, enc, dy, dx, cfg.rho).as_dict()), cfg.out)
    return 0


def cmd_best_response(cfg: RunConfig, args) -> int:
    if args.player == "encoder":
        dy = _strategy(DecoderY, args.dec_y, "--dec-y")
        dx = _strategy(DecoderX, args.dec_x, "--dec-x")
        br = encoder_best_response(cfg.prior, dy, dx, cfg.rho, cfg.tie_break)
    else:
        enc = _encoder(args.enc)
        if not isinstance(enc, SymmetricEncoder):
            raise UsageError("--enc: best responses need a symmetric encoder (two values)")
        if args.player == "decoder-y":
            br = decoder_y_best_response(cfg.prior, enc, cfg.tie_break)
        else:
            br = decoder_x_best_response(cfg.prior, enc)
    _emit(_json({"player": args.player, "chosen": br.chosen, "optima": list(br.optima), "value": br.value}), cfg.out)
    return 0


def cmd_stackelberg(cfg: RunConfig, args) -> int:
    _emit(_json(stackelberg_solve(cfg.prior, cfg.rho, cfg.tie_break).to_dict()), cfg.out)
    return 0


def cmd_nash(cfg: RunConfig, args) -> int:
    _emit(_json(nash_solve(cfg.prior, cfg.rho, cfg.tie_break).to_dict()), cfg.out)
    return 0


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in rows:
        writer.writerow(
            [repr(float(v)) for v in (r.kappa1, r.kappa2, r.mutual_info, r.distortion, r.encoder_payoff, r.decoder_payoff)]
        )
    return buf.getvalue()


def cmd_sweep(cfg: RunConfig, args) -> int:
    follower = None
    if args.dec_y is not None or args.dec_x is not None:
        follower = (_strategy(DecoderY, args.dec_y, "--dec-y"), _strategy(DecoderX, args.dec_x, "--dec-x"))
    rows = payoff_surface(cfg.prior, cfg.rho, cfg.encoder_grid, follower, cfg.tie_break)
    if cfg.fmt == "json":
        _emit(_json([dict(zip(SWEEP_HEADER, (r.kappa1, r.kappa2, r.mutual_info, r.distortion,
                                              r.encoder_payoff, r.decoder_payoff))) for r in rows]), cfg.out)
    else:
        _emit(sweep_csv(rows), cfg.out)
    return 0


def cmd_br_hist(cfg: RunConfig, args) -> int:
    enc_hist = grid_encoder_br_histogram(cfg.prior, cfg.rho, cfg.decoder_grid, cfg.tie_break)
    delta_hist, eps_map = grid_decoder_br_histograms(cfg.prior, cfg.encoder_grid, cfg.tie_break)
    eps_counts = {lab: 0 for lab in ("00", "01", "10", "11")}
    for lab in eps_map.values():
        eps_counts[lab] += 1
    report = {
        "backend": kernels.BACKEND,
        "encoder": {**enc_hist.to_dict(), "support": sorted(enc_hist.support)},
        "decoder_y": {**delta_hist.to_dict(), "support": sorted(delta_hist.support)},
        "decoder_x": {"counts": eps_counts, "total": len(eps_map),
                      "support": sorted(k for k, v in eps_counts.items() if v)},
    }
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["histogram", "label", "count"])
        for name in ("encoder", "decoder_y", "decoder_x"):
            for lab, n in report[name]["counts"].items():
                writer.writerow([name, lab, n])
        _emit(buf.getvalue(), cfg.out)
    else:
        _emit(_json(report), cfg.out)
    return 0


def cmd_check(cfg: RunConfig, args) -> int:
    results = run_all(args.trials, args.seed, cfg.tol)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "eval": cmd_eval,
    "best-response": cmd_best_response,
    "stackelberg": cmd_stackelberg,
    "nash": cmd_nash,
    "sweep": cmd_sweep,
    "br-hist": cmd_br_hist,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prior", default="0.3,0.1,0.2", help="a,b,c or a,b,c,d (default: 0.3,0.1,0.2)")
    common.add_argument("--rho", type=float, default=1.0, help="privacy weight (default: 1)")
    common.add_argument("--encoder-grid", type=int, default=100)
    common.add_argument("--decoder-grid", type=int, default=20)
    common.add_argument("--tie-break", default="lex", help="lex or seed:<N>")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(prog="privsig", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    strat = argparse.ArgumentParser(add_help=False)
    strat.add_argument("--enc", help="k1,k2 (symmetric) or k1,k2,k3,k4")
    strat.add_argument("--dec-y", help="delta1,delta2")
    strat.add_argument("--dec-x", help="eps1,eps2")

    sub.add_parser("eval", parents=[common, strat], help="payoffs of one strategy profile")
    br = sub.add_parser("best-response", parents=[common, strat], help="best response of one player")
    br.add_argument("--player", choices=("encoder", "decoder-y", "decoder-x"), required=True)
    sub.add_parser("stackelberg", parents=[common], help="Stackelberg equilibrium")
    sub.add_parser("nash", parents=[common], help="pure Nash equilibria")
    sub.add_parser("sweep", parents=[common, strat], help="encoder payoff surface as CSV")
    sub.add_parser("br-hist", parents=[common], help="best-response histograms")
    chk = sub.add_parser("check", parents=[common], help="run the invariant suites")
    chk.add_argument("--trials", type=int, default=200)
    chk.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "json"
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        parser.exit(2, f"privsig {args.command}: error: {exc}\n")
    except OutputError as exc:
        print(f"privsig {args.command}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
