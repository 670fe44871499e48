"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse error, 3 verification failure,
4 a triangle-free planar graph needing more than floor(n/2) paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from multiprocessing import Pool
from typing import Iterable, Optional, Sequence

from . import __version__
from .decomp import DecompositionError, path_number_exact, verify
from .engine import EngineConfig, TheoremContradiction, check_input, decompose_gallai
from .frs import ReducingScheme, compute_reduction, lift, validate_feasible
from .gen import EnumerationSpec, enumerate_graphs
from .graph import Graph, GraphError
from .io import ParseError, ReportRecord, graph6_encode, guess_format, read_graphs

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_CONTRADICTION = 0, 1, 2, 3, 4
WORKERS_ENV = "TFGALLAI_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means "parse error" here
        self.print_usage(sys.stderr)
        raise UsageError(message)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _read(path: str, fmt: Optional[str]) -> list[Graph]:
    with open(path) as fh:
        text = fh.read()
    return read_graphs(text, fmt or guess_format(path))


def _open_out(path: Optional[str]):
    return open(path, "w") if path else sys.stdout


def _ordered_map(func, items: Sequence, workers: int) -> Iterable:
    """Map in input order, through a process pool when ``workers > 1``."""
    if workers <= 1 or len(items) <= 1:
        yield from map(func, items)
        return
    with Pool(workers) as pool:
        yield from pool.imap(func, items)


def solve_one(args: tuple[Graph, str, Optional[int]]) -> ReportRecord:
    g, method, budget = args
    start = time.perf_counter()
    if method == "rules":
        cert = decompose_gallai(g, EngineConfig(exact_budget=budget))
        paths = cert.final.as_lists()
        rec = ReportRecord(graph6_encode(g), g.n, g.m, None, g.n // 2, paths, cert.method, 0.0, False)
    elif g.m == 0:
        rec = ReportRecord(graph6_encode(g), g.n, 0, 0, g.n // 2, [], "exact", 0.0, True)
    else:
        res = path_number_exact(g, budget)
        pn = res.path_number if res.optimal else None
        rec = ReportRecord(graph6_encode(g), g.n, g.m, pn, g.n // 2, res.witness.as_lists(),
                           "exact", 0.0, res.optimal)
    rec.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return rec


def cmd_solve(ns) -> int:
    graphs = _read(ns.input, ns.format)
    if ns.method == "rules":
        for g in graphs:
            check_input(g)
    jobs = [(g, ns.method, ns.budget) for g in graphs]
    out = _open_out(ns.out)
    count = 0
    try:
        for rec in _ordered_map(solve_one, jobs, ns.workers):
            out.write(rec.to_json() + "\n")
            count += 1
    finally:
        if ns.out:
            out.close()
    if ns.out:
        manifest = {
            "tool": "tfgallai",
            "version": __version__,
            "command": "solve",
            "input": ns.input,
            "method": ns.method,
            "budget": ns.budget,
            "records": count,
        }
        with open(ns.out + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
    return EXIT_OK


def cmd_verify(ns) -> int:
    graphs = _read(ns.graph, ns.format)
    if len(graphs) != 1:
        raise ParseError(f"expected exactly one graph, found {len(graphs)}")
    with open(ns.decomposition) as fh:
        try:
            paths = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"decomposition is not JSON: {exc}") from None
    if not isinstance(paths, list) or not all(isinstance(p, list) for p in paths):
        raise ParseError("decomposition must be a JSON list of vertex lists")
    report = verify(graphs[0], paths)
    print(f"{'PASS' if report else 'FAIL'}: {len(paths)} paths, {report.summary()}")
    return EXIT_OK if report else EXIT_VERIFY


def cmd_enumerate(ns) -> int:
    spec = EnumerationSpec(
        ns.n,
        connected=ns.connected,
        triangle_free=ns.triangle_free,
        planar=ns.planar,
        max_degree=ns.max_degree,
    )
    out = _open_out(ns.out)
    try:
        for g in enumerate_graphs(spec):
            out.write(graph6_encode(g) + "\n")
    finally:
        if ns.out:
            out.close()
    return EXIT_OK


def _check_graph(args: tuple[Graph, int, bool]) -> tuple[str, int, int, bool, Optional[int]]:
    """(g6, pn, limit, witness ok, engine size) for one enumerated graph."""
    g, limit, with_engine = args
    res = path_number_exact(g)
    ok = bool(verify(g, res.witness)) and res.optimal
    engine_size = len(decompose_gallai(g).final) if with_engine else None
    return graph6_encode(g), res.path_number, limit, ok, engine_size


def cmd_check_theorem(ns) -> int:
    tiers = [(n, dict(triangle_free=True, planar=True), n // 2) for n in range(max(2, ns.min_n), ns.max_n + 1)]
    # the weaker bound for triangle-free graphs that need not be planar
    tiers += [(n, dict(triangle_free=True), (n + 1) // 2) for n in range(2, ns.context_max_n + 1)]
    failures = 0
    for n, filters, bound in tiers:
        planar = filters.get("planar", False)
        graphs = list(enumerate_graphs(EnumerationSpec(n, **filters)))
        jobs = [(g, bound, ns.engine and planar) for g in graphs]
        worst = 0
        for g6, pn, limit, ok, engine_size in _ordered_map(_check_graph, jobs, ns.workers):
            worst = max(worst, pn)
            if pn > limit:
                print(f"CONTRADICTION n={n} {g6}: pn={pn} > {limit}", file=sys.stderr)
                if ns.dump:
                    with open(ns.dump, "a") as fh:
                        fh.write(g6 + "\n")
                return EXIT_CONTRADICTION
            if not ok or (engine_size is not None and not pn <= engine_size <= limit):
                print(f"VERIFY FAIL n={n} {g6}", file=sys.stderr)
                failures += 1
        kind = "planar" if planar else "context"
        print(f"n={n} {kind}: {len(graphs)} graphs, max pn={worst}, bound={bound}")
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_reduce(ns) -> int:
    graphs = _read(ns.graph, ns.format)
    if len(graphs) != 1:
        raise ParseError(f"expected exactly one graph, found {len(graphs)}")
    g = graphs[0]
    with open(ns.scheme) as fh:
        try:
            scheme = ReducingScheme.from_json(fh.read())
        except (json.JSONDecodeError, TypeError, KeyError) as exc:
            raise ParseError(f"bad scheme file: {exc}") from None
    report = validate_feasible(g, scheme)
    for line in report.lines():
        print(line)
    print(f"feasible: {report.feasible}")
    if report.scheme_error:
        return EXIT_VERIFY
    out = compute_reduction(g, scheme)
    print(f"reduced graph: n={out.reduced.n} m={out.reduced.m} g6={graph6_encode(out.reduced)}")
    print(f"  edges: {sorted(out.reduced.edges)}")
    print(f"  isolated: {list(out.isolated)}  parallel edges: {sorted(out.parallel_edges)}")
    if not report.feasible:
        return EXIT_VERIFY
    d = path_number_exact(out.reduced).witness.paths if out.reduced.m else ()
    h = scheme.h_graph(g.n)
    d_h = path_number_exact(h).witness.paths if h.m else ()
    lifted = lift(g, scheme, d, d_h)
    print(f"lift preview: {len(d)} + {len(d_h)} = {len(lifted)} paths (bound {g.n // 2})")
    for p in lifted.paths:
        print("  " + "-".join(map(str, p)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tfgallai", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decompose graphs and write JSONL report records")
    s.add_argument("--input", required=True)
    s.add_argument("--format", choices=("g6", "edgelist"))
    s.add_argument("--method", choices=("exact", "rules"), default="exact")
    s.add_argument("--budget", type=int, help="search node limit for the exact solver")
    s.add_argument("--out")
    s.add_argument("--workers", type=int, default=default_workers())
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a decomposition (JSON list of vertex lists)")
    v.add_argument("--graph", required=True)
    v.add_argument("--format", choices=("g6", "edgelist"))
    v.add_argument("--decomposition", required=True)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="write graph6 lines, one per isomorphism class")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--triangle-free", action="store_true")
    e.add_argument("--planar", action="store_true")
    e.add_argument("--connected", action="store_true")
    e.add_argument("--max-degree", type=int)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("check-theorem", help="exhaustive check of pn <= floor(n/2) on triangle-free planar graphs")
    c.add_argument("--max-n", type=int, default=9)
    c.add_argument("--min-n", type=int, default=2)
    c.add_argument("--context-max-n", type=int, default=0,
                   help="also check pn <= floor((n+1)/2) on all connected triangle-free graphs up to this order")
    c.add_argument("--engine", action="store_true", help="also run the rule engine on every planar graph")
    c.add_argument("--dump", help="append offending graph6 lines here")
    c.add_argument("--workers", type=int, default=default_workers())
    c.set_defaults(func=cmd_check_theorem)

    r = sub.add_parser("reduce", help="validate a reducing scheme and preview the lift")
    r.add_argument("--graph", required=True)
    r.add_argument("--format", choices=("g6", "edgelist"))
    r.add_argument("--scheme", required=True)
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        return ns.func(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TheoremContradiction as exc:
        print(f"CONTRADICTION: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (GraphError, DecompositionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
