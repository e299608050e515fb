"""Command-line surface: gen, rotmap, check, solve, shift, walk.

Exit codes are a stable scripting contract:

* 0 — success
* 2 — usage, format, or validation error
* 3 — solver finished without solving (budget exhausted or proven infeasible)
* 4 — walk refused an inconsistent rotation map (no --allow-inconsistent)

All vertex ids and coin labels on this surface are 1-based.  Every JSON
report carries a top-level "version" field.  All randomness flows from
--seed; two invocations with identical arguments and input files produce
byte-identical outputs (wall-clock stats fields aside).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FormatError, RotwalkError
from .graphs import FAMILIES, FamilySpec, generate_graph, parse_graph, serialize_graph
from .operators import PRODUCT_DIM_LIMIT, build_coin, build_shift, unitarity_defect
from .rotmap import (
    check_involution_consistent,
    check_permutation_consistent,
    greedy_rotation,
    parse_rotation,
    serialize_rotation,
    validate_against_graph,
)
from .solvers import CRITERIA, METHODS, SolverConfig, solve
from .version import REPORT_VERSION, __version__
from .walk import init_state, run as run_walk, uniform_state

COINS = ("hadamard", "grover", "dft", "identity")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_json(path: str | None, payload: dict) -> None:
    _write(path, json.dumps(payload, indent=2) + "\n")


def cmd_gen(args) -> int:
    spec = FamilySpec(args.family, tuple(args.params), seed=args.seed)
    graph = generate_graph(spec, max_tries=args.max_tries)
    _write(args.out, serialize_graph(graph))
    return 0


def cmd_rotmap(args) -> int:
    graph = parse_graph(_read(args.graph))
    if args.mode == "greedy":
        rot = greedy_rotation(graph)
    else:
        if args.map is None:
            print("error: --mode from-file requires --map", file=sys.stderr)
            return 2
        rot = parse_rotation(_read(args.map))
        mismatches = validate_against_graph(rot, graph)
        if mismatches:
            for line in mismatches:
                print(f"error: {line}", file=sys.stderr)
            return 2
    _write(args.out, serialize_rotation(rot))
    return 0


def cmd_check(args) -> int:
    rot = parse_rotation(_read(args.map))
    if args.criterion == "permutation":
        report = check_permutation_consistent(rot)
    else:
        report = check_involution_consistent(rot)
    unitarity = unitarity_defect(rot)
    payload = {
        "version": REPORT_VERSION,
        "criterion": args.criterion,
        "n": rot.n,
        "d": rot.d,
        "consistent": report.consistent,
        "defect": unitarity.defect,
        "violations": report.to_dict()["violations"],
    }
    if args.emit_product:
        if unitarity.product is None:
            print(
                f"note: product omitted, dimension {rot.n * rot.d} exceeds "
                f"{PRODUCT_DIM_LIMIT}",
                file=sys.stderr,
            )
        else:
            payload["product"] = unitarity.product.tolist()
    _write_json(args.out, payload)
    return 0


def cmd_solve(args) -> int:
    graph = parse_graph(_read(args.graph))
    config = SolverConfig(
        criterion=args.criterion,
        method=args.method,
        seed=args.seed,
        max_iterations=args.max_iterations,
        max_restarts=args.max_restarts,
        time_budget=args.time_budget,
        exhaustive_ceiling=args.exhaustive_ceiling,
    )
    outcome = solve(graph, config)
    if outcome.status == "solved" and args.out is not None:
        _write(args.out, serialize_rotation(outcome.rotation_map))
    _write_json(args.stats, outcome.to_report())
    if outcome.status != "solved":
        if outcome.certificate:
            print(f"certificate: {outcome.certificate}", file=sys.stderr)
        return 3
    return 0


def cmd_shift(args) -> int:
    rot = parse_rotation(_read(args.map))
    dim = rot.n * rot.d
    if dim > PRODUCT_DIM_LIMIT:
        print(
            f"error: operator dump is for small instances only "
            f"(dimension {dim} > {PRODUCT_DIM_LIMIT})",
            file=sys.stderr,
        )
        return 2
    dense = build_shift(rot).to_dense()
    payload = {
        "version": REPORT_VERSION,
        "n": rot.n,
        "d": rot.d,
        "ordering": "coin-major",
        "matrix": [[[int(x), 0] for x in row] for row in dense],
    }
    _write_json(args.out, payload)
    return 0


def _parse_start(specs: list[str] | None, n: int, d: int):
    """Start-state syntax: LABEL:VERTEX[:AMPLITUDE], 1-based, repeatable;
    'up'/'down' alias labels 1/2 when d=2; a single 'uniform' spreads
    amplitude over every (label, vertex) pair."""
    if specs is None:
        specs = ["1:1"]
    if specs == ["uniform"]:
        return None
    support = []
    for spec in specs:
        parts = spec.split(":")
        if len(parts) not in (2, 3):
            raise FormatError(f"start spec {spec!r} must be LABEL:VERTEX[:AMPLITUDE]")
        label_text = parts[0].lower()
        aliases = {"up": 1, "down": 2} if d == 2 else {}
        if label_text in aliases:
            label = aliases[label_text]
        else:
            try:
                label = int(label_text)
            except ValueError:
                raise FormatError(f"start spec {spec!r}: bad coin label {parts[0]!r}") from None
        try:
            vertex = int(parts[1])
        except ValueError:
            raise FormatError(f"start spec {spec!r}: bad vertex {parts[1]!r}") from None
        amplitude = 1.0 + 0.0j
        if len(parts) == 3:
            try:
                amplitude = complex(parts[2])
            except ValueError:
                raise FormatError(
                    f"start spec {spec!r}: bad amplitude {parts[2]!r}"
                ) from None
        if not (1 <= label <= d):
            raise FormatError(f"start spec {spec!r}: label {label} out of range 1..{d}")
        if not (1 <= vertex <= n):
            raise FormatError(f"start spec {spec!r}: vertex {vertex} out of range 1..{n}")
        support.append((label - 1, vertex - 1, amplitude))
    return support


def cmd_walk(args) -> int:
    graph = parse_graph(_read(args.graph))
    rot = parse_rotation(_read(args.map))
    mismatches = validate_against_graph(rot, graph)
    if mismatches:
        for line in mismatches:
            print(f"error: {line}", file=sys.stderr)
        return 2
    report = check_permutation_consistent(rot)
    if not report.consistent and not args.allow_inconsistent:
        print(
            "error: rotation map violates the permutation criterion "
            f"({len(report.violations)} violations); the walk would not be "
            "norm-preserving.  Pass --allow-inconsistent to run it anyway.",
            file=sys.stderr,
        )
        return 4
    coin = build_coin(args.coin, rot.d)
    support = _parse_start(args.start, rot.n, rot.d)
    state = uniform_state(rot.n, rot.d) if support is None else init_state(rot.n, rot.d, support)
    trajectory = run_walk(state, coin, build_shift(rot), args.steps)
    if args.format == "csv":
        _write(args.out, trajectory.to_csv_text())
    else:
        _write_json(args.out, trajectory.to_report())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotwalk",
        description="Coined quantum walks on regular graphs via rotation maps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named graph family as an edge list")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="+", type=int, help="family parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tries", type=int, default=100)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("rotmap", help="extract or validate a rotation map")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--mode", choices=("greedy", "from-file"), default="greedy")
    p.add_argument("--map", default=None, help="rotation-map file for --mode from-file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_rotmap)

    p = sub.add_parser("check", help="consistency and unitarity report for a map")
    p.add_argument("map", help="rotation-map file")
    p.add_argument("--criterion", choices=CRITERIA, default="permutation")
    p.add_argument("--emit-product", action="store_true", help="include dense S.S^T")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="search for a consistent rotation map")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--criterion", choices=CRITERIA, default="permutation")
    p.add_argument("--method", choices=METHODS, default="matching")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=5000)
    p.add_argument("--max-restarts", type=int, default=10)
    p.add_argument("--time-budget", type=float, default=30.0)
    p.add_argument("--exhaustive-ceiling", type=int, default=40)
    p.add_argument("--out", default=None, help="rotation-map output path (omitted: map discarded)")
    p.add_argument("--stats", default=None, help="stats JSON path (default stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("shift", help="dump a shift operator as dense JSON (small instances)")
    p.add_argument("map", help="rotation-map file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("walk", help="run a coined walk and emit the trajectory")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("map", help="rotation-map file")
    p.add_argument("--coin", choices=COINS, default="grover")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument(
        "--start",
        action="append",
        default=None,
        help="LABEL:VERTEX[:AMPLITUDE] (1-based, repeatable) or 'uniform'; default 1:1",
    )
    p.add_argument("--allow-inconsistent", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_walk)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RotwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
