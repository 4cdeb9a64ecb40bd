"""Command line interface for the hypercube fault diagnosis toolkit.

Exit codes: 0 when the requested claim holds (or a computation succeeds),
1 when a claim is refuted (the report carries the certificate), 2 on usage
or domain errors, 3 when a search budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagnosability import (
    edge_orbit_catalog,
    h_edge_tolerable_diagnosability,
    theorem_witness,
    verify_theorem,
)
from .diagnoser import DEFAULT_DIAGNOSE_BUDGET, diagnose
from .distinguishability import DEFAULT_SEARCH_BUDGET, distinguishable, t_diagnosable_check
from .errors import BoundError, DomainError, ResourceError
from .models import (
    AdversaryStrategy,
    FaultScenario,
    Model,
    generate_syndrome,
    load_syndrome,
    syndrome_to_text,
)
from .topology import (
    DEFAULT_SUBSET_BUDGET,
    build_hypercube,
    graph_from_text,
    graph_hash,
    graph_to_text,
    min_boundary_bruteforce,
    min_boundary_formula,
)


def _emit(rec: dict) -> None:
    print(json.dumps(rec, indent=2, sort_keys=True))


def _parse_vertex(tok: str, n: int | None) -> int:
    tok = tok.strip()
    if not tok:
        raise DomainError("empty vertex token")
    # binary labels are accepted only at the exact width of the cube
    if n is not None and len(tok) == n and set(tok) <= {"0", "1"}:
        return int(tok, 2)
    try:
        return int(tok, 10)
    except ValueError:
        raise DomainError(f"cannot parse vertex {tok!r}") from None


def _parse_vertices(text: str | None, n: int | None) -> frozenset:
    if not text:
        return frozenset()
    return frozenset(_parse_vertex(tok, n) for tok in text.split(",") if tok.strip())


def _parse_edges(text: str | None, n: int | None) -> frozenset:
    if not text:
        return frozenset()
    out = set()
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        parts = tok.split("-")
        if len(parts) != 2:
            raise DomainError(f"edge token {tok!r} is not of the form u-v")
        u = _parse_vertex(parts[0], n)
        v = _parse_vertex(parts[1], n)
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


def _load_graph(args):
    graph_path = getattr(args, "graph", None)
    if graph_path:
        return graph_from_text(Path(graph_path).read_text())
    if getattr(args, "n", None) is None:
        raise DomainError("provide --n for a hypercube or --graph FILE")
    return build_hypercube(args.n)


def _add_graph_opts(p, hypercube_only=False):
    p.add_argument("--n", type=int, default=None, help="hypercube dimension")
    if not hypercube_only:
        p.add_argument("--graph", default=None, help="graph file (overrides --n)")


def _cmd_topo(args) -> int:
    g = _load_graph(args)
    if args.out:
        Path(args.out).write_text(graph_to_text(g))
    _emit(
        {
            "label": g.label(),
            "vertices": g.vertex_count,
            "edges": g.edge_count,
            "dimension": g.dimension,
            "hash": graph_hash(g),
        }
    )
    return 0


def _cmd_delta_v(args) -> int:
    value = min_boundary_formula(args.m, args.n)
    rec = {"n": args.n, "m": args.m, "formula": value}
    ok = True
    if args.brute:
        g = build_hypercube(args.n)
        brute, witness = min_boundary_bruteforce(g, args.m, subset_budget=args.subset_budget)
        rec["bruteforce"] = brute
        rec["witness"] = sorted(witness)
        ok = brute == value
        rec["match"] = ok
    _emit(rec)
    return 0 if ok else 1


def _cmd_distinguish(args) -> int:
    g = _load_graph(args)
    n = g.dimension
    fe = _parse_edges(args.fe, n)
    f1 = _parse_vertices(args.f1, n)
    f2 = _parse_vertices(args.f2, n)
    verdict = distinguishable(g, fe, f1, f2, Model(args.model))
    _emit(verdict.to_record())
    return 0 if verdict.distinguishable else 1


def _cmd_tdiag(args) -> int:
    g = _load_graph(args)
    fe = _parse_edges(args.fe, g.dimension)
    model = Model(args.model)
    ok, pair = t_diagnosable_check(g, fe, args.t, model, budget=args.budget)
    rec = {
        "graph": g.label(),
        "model": model.value,
        "t": args.t,
        "fault_edges": [list(e) for e in sorted(fe)],
        "diagnosable": ok,
    }
    if not ok:
        rec["counterexample"] = {"f1": sorted(pair[0]), "f2": sorted(pair[1])}
    _emit(rec)
    return 0 if ok else 1


def _cmd_thdiag(args) -> int:
    g = _load_graph(args)
    report = h_edge_tolerable_diagnosability(
        g, args.h, Model(args.model), budget=args.budget, workers=args.workers, seed=args.seed
    )
    _emit(report.to_record())
    return 0


def _cmd_verify_theorem(args) -> int:
    report = verify_theorem(
        args.n,
        args.h,
        Model(args.model),
        budget=args.budget,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    _emit(report.to_record())
    return 0 if report.confirmed else 1


def _cmd_syndrome(args) -> int:
    g = _load_graph(args)
    n = g.dimension
    scenario = FaultScenario(_parse_vertices(args.fv, n), _parse_edges(args.fe, n))
    scenario.validate(g)
    model = Model(args.model)
    if args.strategy == "random":
        strategy = AdversaryStrategy.random_bits(args.seed)
    elif args.strategy == "mimic":
        strategy = AdversaryStrategy.mimic(_parse_vertices(args.mimic, n))
    else:
        strategy = AdversaryStrategy(args.strategy)
    syn = generate_syndrome(g, scenario, model, strategy)
    text = syndrome_to_text(g, scenario.faulty_edges, syn)
    if args.out:
        Path(args.out).write_text(text)
        _emit(
            {
                "model": model.value,
                "tests": len(syn),
                "positive": sum(syn.bits),
                "out": args.out,
            }
        )
    else:
        sys.stdout.write(text)
    return 0


def _cmd_diagnose(args) -> int:
    g = _load_graph(args)
    removed, syn = load_syndrome(Path(args.syndrome).read_text(), g)
    result = diagnose(g, removed, syn, args.t, args.model, budget=args.budget)
    _emit(
        {
            "graph": g.label(),
            "model": syn.model.value,
            "t": args.t,
            "fault_edges": [list(e) for e in sorted(removed)],
            "outcome": result.outcome,
            "candidates": [sorted(c) for c in result.candidates],
            "examined": result.examined,
        }
    )
    return 0 if result.outcome == "unique" else 1


def _cmd_orbits(args) -> int:
    catalog = edge_orbit_catalog(args.n, args.h)
    orbits = {}
    for k, entries in sorted(catalog.orbits.items()):
        orbits[str(k)] = {
            "classes": len(entries),
            "representatives": [[list(e) for e in entry.rep] for entry in entries],
            "orbit_sizes": [entry.size for entry in entries],
            "subsets_covered": catalog.orbit_size_sum(k),
        }
    _emit({"n": args.n, "max_subset": args.h, "orbits": orbits})
    return 0


def _cmd_witness(args) -> int:
    fe, f1, f2 = theorem_witness(args.n, args.h)
    _emit(
        {
            "n": args.n,
            "h": args.h,
            "fault_edges": [list(e) for e in sorted(fe)],
            "f1": sorted(f1),
            "f2": sorted(f2),
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubediag", description="hypercube fault diagnosis toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("topo", help="build a hypercube or inspect a graph file")
    _add_graph_opts(p)
    p.add_argument("--out", default=None, help="write the graph in text form")
    p.set_defaults(func=_cmd_topo)

    p = sub.add_parser("delta-v", help="minimum boundary size of m-vertex sets in Q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="cross-check by enumeration")
    p.add_argument("--subset-budget", type=int, default=DEFAULT_SUBSET_BUDGET)
    p.set_defaults(func=_cmd_delta_v)

    p = sub.add_parser("distinguish", help="decide whether two fault sets are distinguishable")
    _add_graph_opts(p)
    p.add_argument("--model", choices=[m.value for m in Model], required=True)
    p.add_argument("--fe", default="", help="removed edges, e.g. 0-1,2-3")
    p.add_argument("--f1", default="", help="first fault set, e.g. 0,1,3")
    p.add_argument("--f2", default="", help="second fault set")
    p.set_defaults(func=_cmd_distinguish)

    p = sub.add_parser("tdiag", help="check t-diagnosability after edge removal")
    _add_graph_opts(p)
    p.add_argument("--model", choices=[m.value for m in Model], required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--fe", default="")
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.set_defaults(func=_cmd_tdiag)

    p = sub.add_parser("thdiag", help="h-edge tolerable diagnosability of a graph")
    _add_graph_opts(p)
    p.add_argument("--model", choices=[m.value for m in Model], required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_thdiag)

    p = sub.add_parser("verify-theorem", help="check that Q_n minus h edges is (n-h)-diagnosable")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--model", choices=[m.value for m in Model], required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser("witness", help="print the standard indistinguishable pair for Q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("syndrome", help="generate a test syndrome for a fault scenario")
    _add_graph_opts(p)
    p.add_argument("--model", choices=[m.value for m in Model], required=True)
    p.add_argument("--fv", default="", help="faulty vertices")
    p.add_argument("--fe", default="", help="faulty edges")
    p.add_argument("--strategy", choices=AdversaryStrategy.KINDS, default="zeros")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mimic", default="", help="target fault set for the mimic strategy")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_syndrome)

    p = sub.add_parser("diagnose", help="identify fault sets consistent with a syndrome")
    _add_graph_opts(p)
    p.add_argument("--syndrome", required=True, help="syndrome file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--model", default=None, choices=[m.value for m in Model])
    p.add_argument("--budget", type=int, default=DEFAULT_DIAGNOSE_BUDGET)
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("orbits", help="edge-subset orbit representatives of Q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=_cmd_orbits)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ResourceError as err:
        print(f"error: budget exhausted: {err}", file=sys.stderr)
        return 3
    except (BoundError, DomainError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
