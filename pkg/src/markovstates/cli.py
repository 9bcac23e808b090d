"""Command-line front end: experiment sweeps, verification runs, state dumps.

Every command is deterministic given its flags (plus --seed where sampling is
involved): rerunning writes byte-identical CSV/JSON/SVG. CSV is always the
ground truth; SVG files are quick-look renderings of the same numbers.

Exit codes: 0 on success, 2 on usage or validation errors, 3 on I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from .chain import ChainParams, WindowConstraint
from .linalg import tensor_power
from .metrics import BoundParams, discrimination_bound, fidelity_decay_exponent, helstrom_success, trace_distance
from .states import (
    DensityMatrix,
    MarkovStateSpec,
    QubitPair,
    build_iid_state,
    build_markov_state,
    build_tensored_source_state,
    stationary_state,
)
from .svgfig import heatmap, line_plot
from .verification import HypothesisPair, discrimination_report, simulate_discrimination, sweep_fidelity_decay, sweep_sparsity_surface

STATE_DUMP_MAX_N = 10


def _fmt(value: float) -> str:
    return f"{float(value):.17g}"


def _write_text(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(content)


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) if isinstance(v, int) else _fmt(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def _grid(points: int) -> np.ndarray:
    if points < 2:
        raise ValueError("--grid must be >= 2")
    return np.linspace(0.0, 1.0, points)


def cmd_sparsity_surface(args: argparse.Namespace) -> int:
    axis = _grid(args.grid)
    rows = sweep_sparsity_surface(
        args.n, WindowConstraint(args.k, args.l), args.p0, axis, axis
    )
    _write_csv(
        f"{args.out}_sparsity.csv",
        ("epsilon", "delta", "s_exact", "s_series"),
        rows,
    )
    exact = np.array([r[2] for r in rows]).reshape(args.grid, args.grid)
    # Heatmap rows follow delta (bottom to top); columns follow epsilon.
    _write_text(
        f"{args.out}_sparsity.svg",
        heatmap(exact.T.tolist(), "Window-sparsity probability (exact)", "epsilon", "delta"),
    )
    return 0


def cmd_fidelity_decay(args: argparse.Namespace) -> int:
    chain = ChainParams(args.epsilon, args.delta, args.p0)
    pair = QubitPair(args.theta)
    series = sweep_fidelity_decay(chain, pair, args.n_max)
    exponent = fidelity_decay_exponent(chain, BoundParams(args.tau))
    rows = [
        (n, value, math.log2(value), -n * exponent)
        for n, value in series
    ]
    _write_csv(
        f"{args.out}_fidelity.csv",
        ("n", "fidelity", "log2_fidelity", "decay_bound_rhs"),
        rows,
    )
    _write_text(
        f"{args.out}_fidelity.svg",
        line_plot(
            [r[0] for r in rows],
            [r[1] for r in rows],
            "Fidelity against the stationary tensor power",
            "number of emissions",
            "fidelity",
        ),
    )
    return 0


def cmd_trace_distance(args: argparse.Namespace) -> int:
    pair = QubitPair(args.theta)
    bounds = BoundParams(args.tau)
    rows = []
    for delta in _grid(args.grid):
        spec0 = MarkovStateSpec(ChainParams(args.epsilon, 1.0 - delta, args.p0), pair, args.n)
        spec1 = MarkovStateSpec(ChainParams(args.epsilon, delta, args.p0), pair, args.n)
        state0 = build_markov_state(spec0)
        state1 = build_markov_state(spec1)
        rows.append(
            (
                float(delta),
                trace_distance(state0, state1),
                helstrom_success(state0, state1),
                discrimination_bound(spec0, spec1, bounds).trace_lower,
            )
        )
    _write_csv(
        f"{args.out}_trace.csv",
        ("delta", "trace_distance", "helstrom_success", "distance_lower_bound"),
        rows,
    )
    _write_text(
        f"{args.out}_trace.svg",
        line_plot(
            [r[0] for r in rows],
            [r[1] for r in rows],
            "Trace distance between the two source hypotheses",
            "delta",
            "trace distance",
        ),
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if not args.delta0 < args.delta1:
        print("error: --delta0 must be strictly smaller than --delta1", file=sys.stderr)
        return 2
    hypotheses = HypothesisPair(
        epsilon0=args.epsilon0,
        delta0=args.delta0,
        delta1=args.delta1,
        pair=QubitPair(args.theta),
        p0=args.p0,
        n=args.n,
    )
    report = discrimination_report(hypotheses, BoundParams(args.tau))
    result = simulate_discrimination(hypotheses, args.trials, args.seed)
    report = report.with_simulation(result)
    payload = {
        "parameters": {
            "epsilon0": args.epsilon0,
            "delta0": args.delta0,
            "delta1": args.delta1,
            "theta": args.theta,
            "p0": args.p0,
            "n": args.n,
            "tau": args.tau,
            "trials": args.trials,
            "seed": args.seed,
            "priors": [0.5, 0.5],
        },
        "helstrom_success": report.helstrom_success,
        "trace_distance": report.trace_distance,
        "fidelity": report.fidelity,
        "bound_overlap": report.bound.overlap_bound,
        "bound_trace_lower": report.bound.trace_lower,
        "empirical_success": report.empirical_success,
        "empirical_stderr": report.empirical_stderr,
    }
    _write_text(f"{args.out}_verify.json", json.dumps(payload, indent=2) + "\n")
    print(
        f"helstrom_success={report.helstrom_success:.6f} "
        f"empirical={report.empirical_success:.6f}+/-{report.empirical_stderr:.6f} "
        f"bound_trace_lower={report.bound.trace_lower:.6f}"
    )
    return 0


def cmd_state_dump(args: argparse.Namespace) -> int:
    if args.n > STATE_DUMP_MAX_N:
        raise ValueError(f"--n must be <= {STATE_DUMP_MAX_N} for state dumps")
    chain = ChainParams(args.epsilon, args.delta, args.p0)
    pair = QubitPair(args.theta)
    if args.which == "markov":
        state = build_markov_state(MarkovStateSpec(chain, pair, args.n))
    elif args.which == "tensored":
        state = build_tensored_source_state(chain, pair, args.n)
    elif args.which == "stationary-power":
        state = DensityMatrix(tensor_power(stationary_state(chain, pair).matrix, args.n))
    else:
        state = build_iid_state(args.p0, pair, args.n)
    payload = {
        "header": {
            "trace": float(np.real(np.trace(state.matrix))),
            "min_eigenvalue": state.min_eigenvalue(),
        },
        **state.to_json_dict(),
    }
    _write_text(
        f"{args.out}_state.json",
        json.dumps(payload, separators=(",", ":")) + "\n",
    )
    return 0


def _add_common_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default="out", help="output path prefix (default: out)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markovstates",
        description="Simulations of quantum sources with Markov-correlated emissions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "sparsity-surface",
        help="exact and series window-sparsity probabilities over an (epsilon, delta) grid",
    )
    p.add_argument("--n", type=int, default=20, help="string length (default 20)")
    p.add_argument("--k", type=int, default=3, help="window length (default 3)")
    p.add_argument("--l", type=int, default=1, help="max errors per window (default 1)")
    p.add_argument("--p0", type=float, default=1.0, help="initial Good probability (default 1)")
    p.add_argument("--grid", type=int, default=41, help="points per axis (default 41)")
    _add_common_out(p)
    p.set_defaults(func=cmd_sparsity_surface)

    p = sub.add_parser(
        "fidelity-decay",
        help="fidelity between the correlated state and the stationary power vs n",
    )
    p.add_argument("--p0", type=float, default=0.5)
    p.add_argument("--epsilon", type=float, default=0.3)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=math.pi / 3, help="emitted-pair angle (radians)")
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.add_argument("--tau", type=float, default=0.01, help="typicality slack in bits")
    _add_common_out(p)
    p.set_defaults(func=cmd_fidelity_decay)

    p = sub.add_parser(
        "trace-distance",
        help="trace distance between the delta and 1-delta hypotheses over a delta grid",
    )
    p.add_argument("--epsilon", type=float, default=0.3)
    p.add_argument("--p0", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=math.pi / 3)
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--tau", type=float, default=0.01)
    _add_common_out(p)
    p.set_defaults(func=cmd_trace_distance)

    p = sub.add_parser(
        "verify",
        help="full discrimination report plus a Monte Carlo run for one hypothesis pair",
    )
    p.add_argument("--epsilon0", type=float, required=True)
    p.add_argument("--delta0", type=float, required=True)
    p.add_argument("--delta1", type=float, required=True)
    p.add_argument("--theta", type=float, default=math.pi / 3)
    p.add_argument("--p0", type=float, default=0.5)
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau", type=float, default=0.01)
    _add_common_out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("state-dump", help="write one constructed density matrix as JSON")
    p.add_argument(
        "--which",
        choices=("markov", "tensored", "stationary-power", "iid"),
        default="markov",
    )
    p.add_argument("--epsilon", type=float, default=0.3)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--p0", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=math.pi / 3)
    p.add_argument("--n", type=int, default=1)
    _add_common_out(p)
    p.set_defaults(func=cmd_state_dump)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
