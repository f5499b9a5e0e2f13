"""Command-line front end.

Subcommands: fig1, fig3, audit, qsl, fidelity, hexagon. Exit codes:
0 on success, 1 when an asserted audit family fails, 2 on usage or
configuration errors. Stochastic commands require an explicit seed and
produce byte-identical output for identical seed and configuration.

Scenario config schema for ``qsl --config`` (JSON object):

    {
      "hamiltonian": <matrix>,        # Hermitian, hbar = 1
      "jump_ops":    [<matrix>, ...], # optional, default []
      "rates":       [<float>, ...],  # nonnegative, one per jump op
      "rho0":        <matrix>,        # valid density matrix
      "tau":         <float>,         # horizon, > 0
      "dt":          <float>          # step, <= tau / 100
    }

where <matrix> is a nested list of [re, im] pairs, e.g. the identity is
[[[1,0],[0,0]],[[0,0],[1,0]]]. Bundled examples live in demos/configs/.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import experiments
from .errors import ConfigError, QuvarError


def _triple(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z triple, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not dims:
        raise argparse.ArgumentTypeError("dims list is empty")
    return dims


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quvar",
        description="Variance-bound sweeps, randomized inequality audits, "
        "open-system speed-limit reports, and the qubit fidelity witness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig1", help="qutrit family sweep of bounds vs mixing parameter")
    p.add_argument("--samples", type=int, default=41, help="grid points over [0, 1]")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("fig3", help="random-qubit purity/incompatibility scatter")
    p.add_argument("--samples", type=int, default=60000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("audit", help="randomized audit of every inequality family")
    p.add_argument("--dims", type=_dims, default=(2, 3, 4), help="comma-separated dims")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="write the JSON summary here (default: stdout)")

    p = sub.add_parser("qsl", help="reverse-speed-limit report for a scenario")
    p.add_argument("--config", required=True, help="scenario JSON path")
    p.add_argument("--out", help="write the JSON report here (default: stdout)")

    p = sub.add_parser("fidelity", help="qubit fidelity witness from variance data")
    p.add_argument("--r", type=_triple, required=True, help="state Bloch vector x,y,z")
    p.add_argument("--s", type=_triple, required=True, help="target Bloch vector x,y,z")
    p.add_argument("--m", type=_triple, required=True, help="measured direction x,y,z")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here (default: stdout)")

    p = sub.add_parser("hexagon", help="three-observable chord-identity residual sweep")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    return parser


def _cmd_fig1(args) -> int:
    if args.samples < 2:
        raise ConfigError("fig1 needs at least 2 grid points")
    grid = np.linspace(0.0, 1.0, args.samples)
    rows = experiments.fig1_rows(grid)
    experiments.write_csv(args.out, experiments.FIG1_HEADER, rows)
    return 0


def _cmd_fig3(args) -> int:
    rows = experiments.fig3_rows(args.samples, args.seed)
    experiments.write_csv(args.out, experiments.FIG3_HEADER, rows)
    return 0


def _cmd_audit(args) -> int:
    summary = experiments.audit_all(dims=args.dims, samples=args.samples, seed=args.seed)
    text = experiments.dump_json(args.out, summary)
    if not args.out:
        print(text)
    else:
        print(f"audit summary written to {args.out}")
    if not summary["passed"]:
        failing = [k for k, v in summary["families"].items() if not v["passed"]]
        print(f"FAILED families: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def _cmd_qsl(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read scenario config: {exc}") from None
    report = experiments.run_scenario(cfg)
    text = experiments.dump_json(args.out, report)
    if not args.out:
        print(text)
    return 0


def _cmd_fidelity(args) -> int:
    report = experiments.protocol_report(args.r, args.s, args.m, seed=args.seed)
    text = experiments.dump_json(args.out, report)
    if not args.out:
        print(text)
    return 0


def _cmd_hexagon(args) -> int:
    rows = experiments.hexagon_rows(args.samples, args.seed)
    experiments.write_csv(args.out, experiments.HEXAGON_HEADER, rows)
    return 0


_HANDLERS = {
    "fig1": _cmd_fig1,
    "fig3": _cmd_fig3,
    "audit": _cmd_audit,
    "qsl": _cmd_qsl,
    "fidelity": _cmd_fidelity,
    "hexagon": _cmd_hexagon,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuvarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
