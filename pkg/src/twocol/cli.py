"""Command-line interface.

Every subcommand writes ``key=value`` lines and one ``summary`` line to
standard output and a short human-readable note to standard error.

Exit codes: 0 success or valid, 1 invalid or infeasible as an answer,
2 usage, input or falsification errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import generators
from .constructive import (
    FalsificationEvent,
    TargetError,
    solve_plane,
)
from .discharging import audit, target_of
from .exact import TooLarge, col2_exact, prove_lower_bound
from .graphio import (
    FormatError,
    read_graph,
    read_ordering,
    report,
    serialize_graph,
    serialize_ordering,
    write_text,
)
from .heuristics import greedy_backward
from .ordering import BackDegreeExceeded, KPrefixViolation, OrderingError, back_profile, verify

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2
JOBS_ENV = "TWOCOL_JOBS"

FAMILIES = ("triangle", "digon", "tetrahedron", "octahedron", "icosahedron", "dodecahedron",
            "double_wheel", "kleetope", "geodesic", "random")


def _emit(pairs, summary: str, note: str | None = None) -> None:
    sys.stdout.write(report(pairs, summary))
    if note:
        print(note, file=sys.stderr)


def _graph_for(args) -> tuple:
    fam = args.family
    meta = {"family": fam}
    if fam == "double_wheel":
        n = args.n if args.n is not None else 5
        meta["n"] = n
        return generators.double_wheel(n), meta
    if fam == "kleetope":
        meta["base"] = args.base
        return generators.kleetope(generators.named(args.base)), meta
    if fam == "geodesic":
        level = args.n if args.n is not None else 1
        meta["n"] = level
        g = generators.named("icosahedron")
        for _ in range(level):
            g = generators.subdivide(g)
        return g, meta
    if fam == "random":
        n = args.n if args.n is not None else 20
        meta.update(n=n, seed=args.seed, flips=args.flips)
        return generators.random_triangulation(n, args.seed, args.flips), meta
    return generators.named(fam), meta


def cmd_gen(args) -> int:
    g, meta = _graph_for(args)
    write_text(args.out, serialize_graph(g, (), (), meta, with_K=False))
    print(f"generated {meta['family']} with {g.n} vertices and {g.m} edges", file=sys.stderr)
    return EXIT_OK


def _dump(path, exc: FalsificationEvent) -> None:
    if path and exc.target is not None:
        t = exc.target
        write_text(path, serialize_graph(t.g, sorted(t.K), t.C, {"event": type(exc).__name__}))


def cmd_order(args) -> int:
    gf = read_graph(args.graph)
    trace = [] if args.trace else None
    start = time.monotonic()
    try:
        res = solve_plane(gf.graph, gf.K, gf.C, certify=args.certify, trace=trace)
    except FalsificationEvent as exc:
        _dump(args.dump, exc)
        _emit([("event", type(exc).__name__), ("message", str(exc)),
               ("dump", args.dump or "")], "falsification", f"falsification event: {exc}")
        return EXIT_ERROR
    if trace is not None:
        write_text(args.trace, "".join(e.line() + "\n" for e in trace))
    prof = back_profile(gf.graph, res.ordering, gf.C)
    if args.out:
        write_text(args.out, serialize_ordering(res.ordering, 7))
    _emit(
        [("n", gf.graph.n), ("max_back", prof.max_back), ("col2_bound", prof.col2_bound),
         ("certified", args.certify), ("seconds", f"{time.monotonic() - start:.3f}"),
         ("ordering", res.ordering)],
        f"order max_back={prof.max_back}",
        f"ordering with largest back-set {prof.max_back} (col2 <= {prof.col2_bound})",
    )
    return EXIT_OK


def cmd_exact(args) -> int:
    gf = read_graph(args.graph)
    try:
        value = col2_exact(gf.graph, gf.C, gf.K, args.max_n)
    except TooLarge as exc:
        _emit([("error", str(exc))], "exact too-large", str(exc))
        return EXIT_ERROR
    _emit([("n", gf.graph.n), ("col2", value)], f"exact col2={value}", f"col2 = {value}")
    return EXIT_OK


def cmd_greedy(args) -> int:
    gf = read_graph(args.graph)
    order = greedy_backward(gf.graph, gf.C, gf.K, seed=args.seed)
    prof = back_profile(gf.graph, order, gf.C)
    if args.out:
        write_text(args.out, serialize_ordering(order, prof.max_back))
    _emit([("n", gf.graph.n), ("max_back", prof.max_back), ("col2_bound", prof.col2_bound),
           ("ordering", order)], f"greedy max_back={prof.max_back}",
          f"greedy ordering with largest back-set {prof.max_back}")
    return EXIT_OK


def cmd_verify(args) -> int:
    gf = read_graph(args.graph)
    of = read_ordering(args.ordering)
    d = args.d if args.d is not None else of.d
    if d is None:
        _emit([("error", "no bound given")], "verify usage", "pass --d or put a 'd' line in the ordering file")
        return EXIT_ERROR
    try:
        prof = verify(gf.graph, of.ordering, d, gf.K, gf.C)
    except BackDegreeExceeded as exc:
        _emit([("valid", False), ("d", d), ("offender", exc.vertex), ("back", list(exc.back)),
               ("size", len(exc.back))], "verify invalid", str(exc))
        return EXIT_INVALID
    except KPrefixViolation as exc:
        _emit([("valid", False), ("d", d), ("offender", exc.k_vertex), ("earlier", exc.earlier)],
              "verify invalid", str(exc))
        return EXIT_INVALID
    except OrderingError as exc:
        _emit([("valid", False), ("error", str(exc))], "verify invalid", str(exc))
        return EXIT_INVALID
    _emit([("valid", True), ("d", d), ("max_back", prof.max_back)], "verify valid",
          f"valid: every back-set has size at most {d}")
    return EXIT_OK


def cmd_audit(args) -> int:
    gf = read_graph(args.graph)
    t = target_of(gf.graph, gf.K if gf.has_K else None, gf.C)
    rep = audit(t)
    lines = rep.lines()
    sys.stdout.write("\n".join(lines) + "\n" + f"summary audit {'ok' if rep.ok else 'failed'}\n")
    print(f"total charge {rep.total_final}, expected {rep.expected_total}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_lower_bound(args) -> int:
    gf = read_graph(args.graph)
    res = prove_lower_bound(gf.graph, args.d, args.budget, gf.C, gf.K)
    pairs = [("status", res.status), ("d", args.d), ("nodes", res.nodes),
             ("dead_states", res.dead_states), ("seconds", f"{res.seconds:.3f}")]
    if res.ordering is not None:
        pairs.append(("ordering", res.ordering))
    note = {
        "infeasible": f"no ordering with back-sets <= {args.d}: col2 >= {args.d + 2}",
        "feasible": f"found an ordering with back-sets <= {args.d}",
        "timeout": "budget exhausted before a decision",
    }[res.status]
    _emit(pairs, f"lower-bound {res.status}", note)
    return EXIT_OK if res.infeasible else EXIT_INVALID


def _corpus_item(item: tuple) -> tuple:
    i, n, seed, flips = item
    g = generators.random_triangulation(n, seed, flips)
    start = time.monotonic()
    try:
        res = solve_plane(g, certify=True)
    except FalsificationEvent as exc:
        return i, n, None, type(exc).__name__, time.monotonic() - start
    return i, n, back_profile(g, res.ordering).max_back, "", time.monotonic() - start


def cmd_corpus(args) -> int:
    jobs = args.jobs if args.jobs is not None else int(os.environ.get(JOBS_ENV, "1"))
    specs = []
    for i in range(args.count):
        n = 3 + (args.seed + 37 * i) % (args.max_n - 2)
        specs.append((i, n, args.seed + i, (i % 4) * n))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_corpus_item, specs))
    else:
        results = [_corpus_item(s) for s in specs]
    events = [r for r in results if r[3]]
    worst = max((r[2] for r in results if r[2] is not None), default=0)
    for i, n, mb, ev, sec in results:
        sys.stdout.write(f"graph={i} n={n} max_back={'' if mb is None else mb} event={ev} seconds={sec:.3f}\n")
    _emit([("graphs", len(results)), ("events", len(events)), ("worst_max_back", worst)],
          f"corpus events={len(events)} worst={worst}",
          f"{len(results)} graphs, {len(events)} falsification events, worst back-set {worst}")
    return EXIT_ERROR if events else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twocol", description="Two-coloring-number orderings of plane graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a generated plane graph")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--n", type=int, help="vertex count (random), rim length (double_wheel) or level (geodesic)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--flips", type=int, default=0)
    s.add_argument("--base", default="dodecahedron", help="base polyhedron for kleetope")
    s.add_argument("--out", help="output path (default: standard output)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("order", help="constructive ordering with back-sets of size at most 7")
    s.add_argument("graph")
    s.add_argument("--certify", action="store_true", help="re-verify every lifted ordering")
    s.add_argument("--trace", help="write the reduction trace here")
    s.add_argument("--dump", help="write the failing target here on a falsification event")
    s.add_argument("--out", help="write the ordering file here")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("exact", help="exact two-coloring number of a small graph")
    s.add_argument("graph")
    s.add_argument("--max-n", type=int, default=22)
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("greedy", help="greedy backward ordering")
    s.add_argument("graph")
    s.add_argument("--seed", type=int, help="random tie-breaking seed")
    s.add_argument("--out", help="write the ordering file here")
    s.set_defaults(func=cmd_greedy)

    s = sub.add_parser("verify", help="check an ordering against a back-set bound")
    s.add_argument("graph")
    s.add_argument("ordering")
    s.add_argument("--d", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("audit", help="discharging audit")
    s.add_argument("graph")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("lower-bound", help="budgeted search for a proof that no d-ordering exists")
    s.add_argument("graph")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--budget", type=float, default=60.0, help="seconds")
    s.set_defaults(func=cmd_lower_bound)

    s = sub.add_parser("corpus", help="run the constructive solver on seeded random triangulations")
    s.add_argument("--count", type=int, default=300)
    s.add_argument("--max-n", type=int, default=150)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, help=f"worker processes (default: ${JOBS_ENV} or 1)")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FormatError, TargetError, OrderingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.stdout.write(report([("error", str(exc))], "error"))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
