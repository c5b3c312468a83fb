"""Command line interface.

Exit codes: 0 shortest paths / success, 1 negative cycle, 2 usage or parse
error, 3 internal invariant failure. Vertex ids on the command line and in
all outputs are 1-based, as in DIMACS files.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import bench
from .classic import bellman_ford
from .dimacs import DimacsError, parse_dimacs, write_dimacs, write_potentials
from .generators import gen_layered, gen_random
from .graph import ContractViolation, Graph, MagnitudeError, NegativeCycleCertificate, SolveOutcome
from .solver import SolveConfig, differential_check, reweight, solve_sssp

EXIT_OK, EXIT_CYCLE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
LOG_LEVELS = {"off": logging.CRITICAL + 1, "info": logging.INFO, "trace": logging.DEBUG}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load(path: str) -> tuple[Graph, int | None]:
    try:
        return parse_dimacs(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _source(arg: int | None, file_source: int | None, g: Graph) -> int:
    if arg is None:
        return file_source if file_source is not None else 0
    if not 1 <= arg <= g.n:
        raise UsageError(f"--source {arg} out of range 1..{g.n}")
    return arg - 1


def _print_cycle(g: Graph, cert: NegativeCycleCertificate) -> None:
    weight = sum(g.weights[a] for a in cert.arcs)
    print(f"negative cycle {weight}")
    for a in cert.arcs:
        u, v, w = g.arc(a)
        print(f"a {u + 1} {v + 1} {w}")


def _print_labels(outcome: SolveOutcome, g: Graph, fmt: str) -> None:
    labels = outcome.labels
    assert labels is not None
    parent_vertex = [None if a is None else g.tails[a] + 1 for a in labels.parent]
    if fmt == "json":
        print(json.dumps({
            "verdict": "shortest-paths",
            "dist": labels.dist,
            "parent": parent_vertex,
            "stats": outcome.stats,
        }))
    else:
        print("vertex\tdist\tparent")
        for v, (d, p) in enumerate(zip(labels.dist, parent_vertex)):
            print(f"{v + 1}\t{'inf' if d is None else d}\t{'-' if p is None else p}")


def cmd_solve(args) -> int:
    g, fs = _load(args.file)
    s = _source(args.source, fs, g)
    if args.algo == "bf":
        outcome = bellman_ford(g, s)
    else:
        variant = "improved" if args.algo == "snakes-improved" else "basic"
        outcome = solve_sssp(g, s, SolveConfig(variant=variant, heap=args.heap))
    if outcome.cycle is not None:
        _print_cycle(g, outcome.cycle)
        return EXIT_CYCLE
    _print_labels(outcome, g, args.out)
    return EXIT_OK


def cmd_reweight(args) -> int:
    g, _ = _load(args.file)
    art = reweight(g, SolveConfig(variant=args.variant, heap=args.heap))
    if isinstance(art, NegativeCycleCertificate):
        _print_cycle(g, art)
        return EXIT_CYCLE
    Path(args.out).write_bytes(write_dimacs(art.graph))
    Path(args.potentials).write_bytes(write_potentials(art.potentials))
    print(f"iterations {art.iterations} c {art.c}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "random":
        g = gen_random(args.n, args.m, args.w_min, args.w_max, args.neg_fraction, args.seed)
    else:
        g = gen_layered(args.layers, args.width, args.seed, degree=args.degree, max_weight=args.max_weight)
    data = write_dimacs(g, source=0)
    if args.out == "-":
        sys.stdout.write(data.decode())
    else:
        Path(args.out).write_bytes(data)
    return EXIT_OK


def cmd_bench(args) -> int:
    instances = bench.load_instances(args.instances)
    if not instances:
        raise UsageError(f"no .gr files in {args.instances}")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    try:
        records = bench.bench_run(instances, algos, args.csv)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"{len(records)} records written to {args.csv}")
    return EXIT_OK


def cmd_check(args) -> int:
    path = Path(args.path)
    files = sorted(path.glob("*.gr")) if path.is_dir() else [path]
    failures = 0
    for f in files:
        g, fs = _load(str(f))
        s = _source(args.source, fs, g)
        oracle = bellman_ford(g, s)
        ok = True
        for variant in ("basic", "improved"):
            for heap in ("binary", "pairing"):
                cfg = SolveConfig(variant=variant, heap=heap)
                result = differential_check(g, s, cfg, args.corpus, f.stem, oracle=oracle)
                if not result:
                    ok = False
                    print(f"MISMATCH {f.name} {variant}/{heap}: {result.reason}")
        failures += not ok
        if ok:
            print(f"ok {f.name}")
    return EXIT_INTERNAL if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="snakes-sp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="shortest paths from one source")
    s.add_argument("file")
    s.add_argument("--source", type=int, help="1-based source (default: file's 'n <v> s' line, else 1)")
    s.add_argument("--algo", choices=["snakes", "snakes-improved", "bf"], default="snakes")
    s.add_argument("--heap", choices=["binary", "pairing"], default="binary")
    s.add_argument("--out", choices=["json", "tsv"], default="tsv")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reweight", help="write the nonnegative reweighted graph and potentials")
    r.add_argument("file")
    r.add_argument("--out", required=True)
    r.add_argument("--potentials", required=True)
    r.add_argument("--variant", choices=["basic", "improved"], default="basic")
    r.add_argument("--heap", choices=["binary", "pairing"], default="binary")
    r.set_defaults(func=cmd_reweight)

    gp = sub.add_parser("gen", help="generate a seeded instance")
    fam = gp.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gr = fam.add_parser("random")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--w-min", type=int, default=-16)
    gr.add_argument("--w-max", type=int, default=64)
    gr.add_argument("--neg-fraction", type=float, default=0.3)
    gl = fam.add_parser("layered")
    gl.add_argument("--layers", type=int, required=True)
    gl.add_argument("--width", type=int, required=True)
    gl.add_argument("--degree", type=int)
    gl.add_argument("--max-weight", type=int, default=16)
    for q in (gr, gl):
        q.add_argument("--seed", type=int, required=True)
        q.add_argument("--out", required=True, help="output file, '-' for stdout")
        q.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="run algorithms over a directory of .gr files")
    b.add_argument("--instances", required=True)
    b.add_argument("--algos", default="snakes-basic,snakes-improved,bellman-ford")
    b.add_argument("--csv", required=True)
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("check", help="differential check against Bellman-Ford")
    c.add_argument("path", help=".gr file or directory of .gr files")
    c.add_argument("--source", type=int)
    c.add_argument("--corpus", help="directory for mismatching instances")
    c.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("SNAKES_SP_LOG", "off").lower()
    logging.basicConfig(level=LOG_LEVELS.get(level, LOG_LEVELS["off"]), format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, DimacsError, MagnitudeError, ValueError) as exc:
        if isinstance(exc, ContractViolation):
            print(f"internal error: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
