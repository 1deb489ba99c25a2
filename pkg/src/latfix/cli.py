"""Command-line front end: JSON instances in, JSON results and traces out.

Exit status: 0 feasible, 2 infeasible (or unreachable), 1 input or bound
errors (diagnostic with a machine-readable code on stderr).  Indices in SMP
files are 1-based to match the usual presentation of preference tables; all
other files use 0-based indices.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import __version__
from .clearing import AuctionInstance, OverdemandSearchTooLarge, clearing_matching, clearing_problem
from .constraints import RejectedConstraint, conjoin, parse_constraints
from .demos import JobInstance, PrefixInstance, job_problem, prefix_problem
from .engine import DomainTooLarge, ProblemContractViolation, solve
from .matching import CyclicPrecedence, SmpInstance, matching_of, smp_problem
from .oracles import (
    TooLarge,
    oracle_bellman_ford,
    oracle_clearing_prices,
    oracle_exclusive_prefix,
    oracle_job_times,
    oracle_stable_matchings,
)
from .paths import (
    UnreachableVertex,
    WeightedDigraph,
    dijkstra_distances,
    parents_of,
    shortest_a,
    shortest_b,
)
from .slices import (
    EventSpaceTooLarge,
    TooManySolutions,
    build_slice,
    count_solutions,
    enumerate_solutions,
)

ERROR_CODES = {
    json.JSONDecodeError: "PARSE_ERROR",
    FileNotFoundError: "PARSE_ERROR",
    RejectedConstraint: "UNSUPPORTED_CONSTRAINT",
    CyclicPrecedence: "CYCLIC_PRECEDENCE",
    EventSpaceTooLarge: "EVENT_SPACE_TOO_LARGE",
    TooManySolutions: "TOO_MANY_SOLUTIONS",
    DomainTooLarge: "DOMAIN_TOO_LARGE",
    OverdemandSearchTooLarge: "OVERDEMAND_SEARCH_TOO_LARGE",
    TooLarge: "ORACLE_TOO_LARGE",
    ProblemContractViolation: "CONTRACT_VIOLATION",
    KeyError: "SCHEMA_ERROR",
    TypeError: "SCHEMA_ERROR",
    ValueError: "SCHEMA_ERROR",
}

SCHEMAS = {
    "schedule": {
        "jobs": {"t": [2, 3, 1], "pre": [[], [0], [0, 1]]},
        "constraints": [{"atMost": [0, 1]}],
    },
    "prefix": {
        "prefix": {"a": [1, 2, 3]},
        "constraints": [{"lowerBound": [0, 2, 0]}],
    },
    "smp": {
        "smp": {
            "mpref": [[2, 1], [1, 2]],
            "wpref": [[1, 2], [2, 1]],
            "crossEdges": [{"from": [1, 1], "to": [2, 1]}],
            "forbiddenPairs": [[1, 2]],
            "forcedPairs": [[2, 2]],
        },
        "#": "1-based men/women ids and ranks; crossEdges: from-event must precede to-event",
    },
    "path": {
        "graph": {"n": 5, "edges": [[0, 1, 9], [0, 2, 2], [1, 3, 3], [2, 3, 6], [4, 3, 8], [1, 4, 2], [2, 4, 5]]},
        "constraints": [{"atMost": [1, 2]}],
    },
    "clearing": {
        "auction": {"valuations": [[4, 1], [3, 2]]},
        "constraints": [{"withinDelta": [0, 1, 2]}],
    },
    "slice": {"#": "any schedule/prefix/smp/clearing payload with integral data"},
    "oracle": {"#": "any schedule/prefix/smp/path/clearing payload; answers are brute-forced"},
}


def _load_payload(source: str) -> dict:
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif not source.lstrip().startswith("{"):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    payload = json.loads(text)
    if not isinstance(payload, dict):
        raise ValueError("top-level input must be a JSON object")
    return payload


def _smp_from_payload(spec: dict) -> SmpInstance:
    mpref = [[w - 1 for w in row] for row in spec["mpref"]]
    wpref = [[m - 1 for m in row] for row in spec["wpref"]]
    cross = [
        ((e["from"][0] - 1, e["from"][1]), (e["to"][0] - 1, e["to"][1]))
        for e in spec.get("crossEdges", [])
    ]
    forbidden = [(m - 1, w - 1) for m, w in spec.get("forbiddenPairs", [])]
    forced = [(m - 1, w - 1) for m, w in spec.get("forcedPairs", [])]
    return SmpInstance(mpref, wpref, cross, forbidden, forced)


def _graph_from_payload(spec: dict) -> WeightedDigraph:
    return WeightedDigraph(spec["n"], [tuple(e) for e in spec["edges"]])


def _base_problem(payload: dict):
    """(problem, kind, instance) for any solvable payload."""
    cs = parse_constraints(payload.get("constraints"))
    if "jobs" in payload:
        inst = JobInstance(payload["jobs"]["t"], payload["jobs"].get("pre"))
        return conjoin(job_problem(inst), cs), "schedule", inst
    if "prefix" in payload:
        inst = PrefixInstance(payload["prefix"]["a"])
        return conjoin(prefix_problem(inst), cs), "prefix", inst
    if "smp" in payload:
        if cs:
            raise ValueError("smp constraints are expressed as crossEdges and pairs")
        inst = _smp_from_payload(payload["smp"])
        return smp_problem(inst), "smp", inst
    if "auction" in payload:
        inst = AuctionInstance(payload["auction"]["valuations"])
        return clearing_problem(inst, cs), "clearing", inst
    if "graph" in payload:
        from .paths import rooted_problem

        inst = _graph_from_payload(payload["graph"])
        return conjoin(rooted_problem(inst), cs), "path", inst
    raise ValueError("payload has none of the known instance keys")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _emit_trace(result) -> None:
    for rec in result.trace or ():
        _emit({"round": rec.round, "G": list(rec.state), "forbidden": sorted(rec.forbidden)})


def _finish_solve(result, extras=None) -> int:
    if result.trace is not None:
        _emit_trace(result)
    if result.feasible:
        out = {"status": "feasible", "solution": list(result.solution), "rounds": result.rounds}
        if extras:
            out.update(extras)
        _emit(out)
        return 0
    _emit({"status": "infeasible", "witness": result.witness})
    return 2


def _cmd_schedule(args) -> int:
    payload = _load_payload(args.input)
    problem, _, _ = _base_problem({"jobs": payload["jobs"], "constraints": payload.get("constraints")})
    return _finish_solve(solve(problem, mode=args.mode, threads=args.threads, trace=args.trace))


def _cmd_prefix(args) -> int:
    payload = _load_payload(args.input)
    problem, _, _ = _base_problem(
        {"prefix": payload["prefix"], "constraints": payload.get("constraints")}
    )
    return _finish_solve(solve(problem, mode=args.mode, threads=args.threads, trace=args.trace))


def _cmd_smp(args) -> int:
    payload = _load_payload(args.input)
    inst = _smp_from_payload(payload["smp"])
    result = solve(smp_problem(inst), mode=args.mode, threads=args.threads, trace=args.trace)
    extras = None
    if result.feasible:
        extras = {"matching": [w + 1 for w in matching_of(inst, result.solution)]}
    return _finish_solve(result, extras)


def _cmd_path(args) -> int:
    payload = _load_payload(args.input)
    graph = _graph_from_payload(payload["graph"])
    cs = parse_constraints(payload.get("constraints"))
    if args.algo == "dijkstra":
        if cs:
            raise ValueError("constraints require --algo a or b")
        try:
            dist = dijkstra_distances(graph)
        except UnreachableVertex as exc:
            _emit(
                {
                    "status": "unreachable",
                    "unreachable": list(exc.unreachable),
                    "solution": [None if d == float("inf") else d for d in exc.distances],
                }
            )
            return 2
        parents = [None] + [min(parents_of(j, dist, graph)) for j in range(1, graph.n)]
        _emit({"status": "feasible", "solution": list(dist), "parents": parents})
        return 0
    solver = shortest_a if args.algo == "a" else shortest_b
    result = solver(graph, cs, mode=args.mode, threads=args.threads, trace=args.trace)
    extras = None
    if result.feasible:
        parents = [None]
        for j in range(1, graph.n):
            have = parents_of(j, result.solution, graph)
            parents.append(min(have) if have else None)
        extras = {"parents": parents}
    return _finish_solve(result, extras)


def _cmd_clearing(args) -> int:
    payload = _load_payload(args.input)
    inst = AuctionInstance(payload["auction"]["valuations"])
    cs = parse_constraints(payload.get("constraints"))
    problem = clearing_problem(inst, cs, accelerated=(args.algo == "accelerated"))
    result = solve(problem, mode=args.mode, threads=args.threads, trace=args.trace)
    extras = None
    if result.feasible:
        assignment = clearing_matching(inst, result.solution)
        extras = {"matching": list(assignment) if assignment else None}
    return _finish_solve(result, extras)


def _cmd_slice(args) -> int:
    payload = _load_payload(args.input)
    problem, _, _ = _base_problem(payload)
    poset = build_slice(problem)
    if args.count:
        _emit({"count": count_solutions(poset)})
        return 0
    out = {
        "bottom": list(poset.bottom) if poset.bottom is not None else None,
        "elements": [list(e) for e in poset.elements],
        "hasse": [list(edge) for edge in poset.hasse_edges()],
    }
    if args.enumerate:
        out["solutions"] = [list(s) for s in enumerate_solutions(poset, problem)]
    _emit(out)
    return 0


def _cmd_oracle(args) -> int:
    payload = _load_payload(args.input)
    started = time.perf_counter()
    if "smp" in payload:
        inst = _smp_from_payload(payload["smp"])
        answers = sorted(oracle_stable_matchings(inst))
        out = {
            "problem": "smp",
            "answers": [[w + 1 for w in m] for m in answers],
            "enumerated": len(answers),
        }
    elif "graph" in payload:
        graph = _graph_from_payload(payload["graph"])
        dist, unreachable = oracle_bellman_ford(graph)
        out = {
            "problem": "path",
            "distances": [None if j in unreachable else d for j, d in enumerate(dist)],
            "unreachable": sorted(unreachable),
        }
    elif "auction" in payload:
        inst = AuctionInstance(payload["auction"]["valuations"])
        answers = oracle_clearing_prices(inst)
        floor = [min(a[i] for a in answers) for i in range(inst.n)] if answers else None
        out = {
            "problem": "clearing",
            "answers": [list(a) for a in answers],
            "minimum": floor,
            "enumerated": len(answers),
        }
    elif "jobs" in payload:
        times = oracle_job_times(payload["jobs"]["t"], payload["jobs"].get("pre") or ())
        out = {"problem": "schedule", "times": list(times) if times else None}
    elif "prefix" in payload:
        out = {"problem": "prefix", "sums": list(oracle_exclusive_prefix(payload["prefix"]["a"]))}
    else:
        raise ValueError("payload has none of the known instance keys")
    out["elapsedMs"] = round((time.perf_counter() - started) * 1000, 3)
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latfix",
        description="Least-fixpoint solvers for scheduling, matching, paths, and market clearing",
    )
    parser.add_argument("--version", action="version", version=f"latfix {__version__}")
    parser.add_argument(
        "--schema",
        choices=sorted(SCHEMAS),
        help="print the expected input payload for a subcommand and exit",
    )
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("input", help="path to a JSON file, inline JSON, or - for stdin")
        p.add_argument("--mode", choices=["sequential", "parallel"], default="sequential")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--trace", action="store_true", help="emit one JSON line per round")

    add_common(sub.add_parser("schedule", help="precedence-constrained completion times"))
    add_common(sub.add_parser("prefix", help="exclusive prefix sums"))
    add_common(sub.add_parser("smp", help="constrained stable matching"))
    p_path = sub.add_parser("path", help="single-source shortest paths")
    add_common(p_path)
    p_path.add_argument("--algo", choices=["a", "b", "dijkstra"], default="b")
    p_clear = sub.add_parser("clearing", help="minimum market clearing prices")
    add_common(p_clear)
    p_clear.add_argument("--algo", choices=["unit", "accelerated"], default="unit")
    p_slice = sub.add_parser("slice", help="all feasible solutions via join-irreducibles")
    p_slice.add_argument("input")
    p_slice.add_argument("--enumerate", action="store_true")
    p_slice.add_argument("--count", action="store_true")
    p_oracle = sub.add_parser("oracle", help="brute-force reference answers")
    p_oracle.add_argument("input")
    return parser


_COMMANDS = {
    "schedule": _cmd_schedule,
    "prefix": _cmd_prefix,
    "smp": _cmd_smp,
    "path": _cmd_path,
    "clearing": _cmd_clearing,
    "slice": _cmd_slice,
    "oracle": _cmd_oracle,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema:
        _emit(SCHEMAS[args.schema])
        return 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except Exception as exc:  # noqa: BLE001 - mapped to machine-readable codes
        for cls, code in ERROR_CODES.items():
            if isinstance(exc, cls):
                sys.stderr.write(json.dumps({"code": code, "message": str(exc)}) + "\n")
                return 1
        raise


if __name__ == "__main__":
    sys.exit(main())
