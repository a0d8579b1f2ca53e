"""Command-line front end.

Every subcommand prints one JSON report to stdout (logs go to stderr) and
echoes its inputs, seed and timing. With a fixed seed and --jobs 1 the
report is byte-identical across runs, timing fields aside. Exit codes:
0 success, 2 usage error, 3 time budget exceeded (partial report, flagged).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import catalog, core, latin, srg
from .errors import SynchroError, TimeBudgetExceeded
from .graphs import (
    Graph,
    box_product,
    complement,
    from_adjacency_text,
    from_graph6,
    to_adjacency_text,
    to_graph6,
)
from .perms import PermGroup, group_to_text, parse_group_file
from .search import (
    SearchOptions,
    chromatic_number,
    clique_number,
    enumerate_endomorphisms,
)
from .transforms import kernel_type, parse_transformation


def _digest(*chunks) -> str:
    h = hashlib.sha256()
    for c in chunks:
        h.update(c.encode() if isinstance(c, str) else c)
        h.update(b"\x00")
    return h.hexdigest()[:16]


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _load_graph(args) -> tuple[Graph, str]:
    if getattr(args, "catalog", None):
        g = catalog.build(args.catalog)
        if not isinstance(g, Graph):
            raise SynchroError(f"{args.catalog} is not a graph")
        return g, f"catalog:{args.catalog}"
    text = _read(args.graph)
    body = text.strip()
    if body and (body.startswith(">>graph6<<") or not any(ch in body for ch in ":\n")):
        return from_graph6(body.removeprefix(">>graph6<<")), _digest(text)
    return from_adjacency_text(text), _digest(text)


def _load_group(args) -> tuple[PermGroup, str]:
    if getattr(args, "catalog_group", None):
        grp = catalog.build(args.catalog_group)
        if not isinstance(grp, PermGroup):
            raise SynchroError(f"{args.catalog_group} is not a group")
        return grp, f"catalog:{args.catalog_group}"
    text = _read(args.group)
    return parse_group_file(text), _digest(text)


def _emit(report: dict, started: float) -> None:
    report["timing_seconds"] = round(time.monotonic() - started, 6)
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _graph_out(g: Graph, fmt: str) -> str:
    return to_graph6(g) if fmt == "g6" else to_adjacency_text(g)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="synchro")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=None, help="workers (default $SYNCHRO_JOBS or 1)")
    parser.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sync", help="synchronization of a group and a map")
    ssub = p.add_subparsers(dest="action", required=True)
    for name in ("check", "graph", "minrank"):
        sp = ssub.add_parser(name)
        sp.add_argument("-g", "--group")
        sp.add_argument("--catalog-group")
        sp.add_argument("-f", "--map", required=True)
        if name == "graph":
            sp.add_argument("--format", choices=("adj", "g6"), default="adj")
    sp = ssub.add_parser("scan")
    sp.add_argument("-g", "--group")
    sp.add_argument("--catalog-group")
    sp.add_argument("--ranks", required=True, help="comma-separated ranks")
    sp.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("graph", help="clique / chromatic / endomorphism search")
    gsub = p.add_subparsers(dest="action", required=True)
    for name in ("clique", "chroma", "endos"):
        sp = gsub.add_parser(name)
        sp.add_argument("graph", nargs="?")
        sp.add_argument("--catalog")
        if name == "endos":
            sp.add_argument("--proper", action="store_true")
            sp.add_argument("--count-only", action="store_true")
            sp.add_argument("--rank", type=int, default=None)

    p = sub.add_parser("latin", help="Latin square operations")
    lsub = p.add_subparsers(dest="action", required=True)
    sp = lsub.add_parser("rorth")
    sp.add_argument("-a", "--first", required=True)
    sp.add_argument("-b", "--second", required=True)
    sp = lsub.add_parser("hom")
    sp.add_argument("-a", "--first", required=True)
    sp.add_argument("-b", "--second", required=True)
    sp = lsub.add_parser("spectrum")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--samples", type=int, default=2000)

    p = sub.add_parser("construct", help="witness endomorphism constructions")
    csub = p.add_subparsers(dest="action", required=True)
    sp = csub.add_parser("boxpower")
    sp.add_argument("-k", type=int, default=4)
    sp.add_argument("--rank", type=int, required=True)
    sp = csub.add_parser("triangular")
    sp.add_argument("-m", type=int, required=True)
    sp = csub.add_parser("cayley")
    sp.add_argument("-p", type=int, required=True)

    p = sub.add_parser("srg", help="strongly regular graph analysis")
    rsub = p.add_subparsers(dest="action", required=True)
    sp = rsub.add_parser("analyze")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--catalog")

    p = sub.add_parser("catalog", help="named deterministic constructions")
    ksub = p.add_subparsers(dest="action", required=True)
    ksub.add_parser("list")
    sp = ksub.add_parser("build")
    sp.add_argument("name")
    sp.add_argument("-o", "--out", default=None)
    sp.add_argument("--format", choices=("adj", "g6"), default="adj")
    sp = ksub.add_parser("verify")
    sp.add_argument("name", nargs="?")

    args = parser.parse_args(argv)
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("SYNCHRO_JOBS", "1"))
    started = time.monotonic()
    report = {"command": " ".join(argv if argv is not None else sys.argv[1:]), "seed": args.seed}

    try:
        _dispatch(args, jobs, report)
    except TimeBudgetExceeded as ex:
        report["error"] = "time budget exceeded"
        report["partial"] = True
        report["detail"] = str(ex)
        _emit(report, started)
        return 3
    except (SynchroError, OSError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    _emit(report, started)
    return 0


def _dispatch(args, jobs, report):
    if args.command == "sync":
        group, gdig = _load_group(args)
        report["inputs"] = {"group": gdig}
        if args.action == "scan":
            ranks = [int(tok) for tok in args.ranks.split(",") if tok]
            report["results"] = core.synchronization_rank_scan(
                group, args.samples, ranks, seed=args.seed
            )
            return
        f = parse_transformation(_read(args.map))
        report["inputs"]["map"] = _digest(f.to_text())
        if args.action == "check":
            report["results"] = core.instance_report(group, f)
        elif args.action == "minrank":
            report["results"] = {"min_rank": core.min_rank(group, f)}
        elif args.action == "graph":
            g = core.graph_of(group, f)
            report["results"] = {
                "n": g.n,
                "edges": g.edge_count(),
                "graph": _graph_out(g, args.format),
            }
        return

    if args.command == "graph":
        g, dig = _load_graph(args)
        report["inputs"] = {"graph": dig}
        if args.action == "clique":
            size, witness = clique_number(g, time_budget=args.budget)
            report["results"] = {"clique_number": size, "witness": witness}
        elif args.action == "chroma":
            chi, colouring = chromatic_number(g, time_budget=args.budget)
            report["results"] = {"chromatic_number": chi, "colouring": colouring}
        elif args.action == "endos":
            rank_filter = frozenset([args.rank]) if args.rank else None
            opts = SearchOptions(
                rank_filter=rank_filter,
                proper_only=args.proper,
                count_only=args.count_only,
                time_budget=args.budget,
                parallelism=jobs,
            )
            census = enumerate_endomorphisms(g, opts)
            report["results"] = {
                "total": census.total,
                "by_rank": {str(r): c for r, c in census.histogram().items()},
            }
            if not args.count_only:
                report["results"]["endomorphisms"] = [
                    h.as_transformation().to_text() for h in census.solutions
                ]
        return

    if args.command == "latin":
        if args.action == "spectrum":
            achievable = latin.r_orthogonal_spectrum(args.k, samples=args.samples, seed=args.seed)
            report["results"] = {"k": args.k, "achievable": sorted(achievable)}
            return
        a = latin.LatinSquare.from_text(_read(args.first))
        b = latin.LatinSquare.from_text(_read(args.second))
        report["inputs"] = {"first": _digest(a.to_text()), "second": _digest(b.to_text())}
        if args.action == "rorth":
            report["results"] = {"r": latin.r_orthogonality(a, b)}
        else:
            hom = latin.superposition_hom(a, b)
            report["results"] = {
                "rank": hom.rank,
                "kernel_type": list(hom.kernel_type()),
                "images": hom.images.tolist(),
            }
        return

    if args.command == "construct":
        if args.action == "boxpower":
            k = args.k
            if k != 4:
                raise SynchroError("boxpower witnesses are built from the order-4 fixtures")
            pair = _order4_pair_of_rank(args.rank)
            x = complement(box_product(Graph.complete(4), Graph.complete(4)))
            colouring = [[i * 4 + j for j in range(4)] for i in range(4)]
            hom = latin.superposition_hom(*pair)
            t = latin.box_power_endomorphism(x, colouring, hom)
            report["results"] = {
                "vertices": 256,
                "rank": t.rank,
                "kernel_type": list(kernel_type(t)),
                "endomorphism": t.to_text(),
            }
        elif args.action == "triangular":
            hom = latin.triangular_hom(args.m)
            report["results"] = {
                "rank": hom.rank,
                "kernel_type": list(hom.kernel_type()),
                "images": hom.images.tolist(),
            }
        elif args.action == "cayley":
            g, grp, endo = latin.cayley_family(args.p)
            report["results"] = {
                "vertices": g.n,
                "valency": g.valency(),
                "primitive": grp.is_primitive(),
                "rank": endo.rank,
                "kernel_type": list(kernel_type(endo)),
            }
        return

    if args.command == "srg":
        g, dig = _load_graph(args)
        report["inputs"] = {"graph": dig}
        report["results"] = srg.analyze(g)
        return

    if args.command == "catalog":
        if args.action == "list":
            report["results"] = catalog.list_names()
        elif args.action == "verify":
            report["results"] = catalog.verify(args.name)
        elif args.action == "build":
            obj = catalog.build(args.name)
            if isinstance(obj, Graph):
                payload = _graph_out(obj, args.format)
                report["results"] = {"kind": "graph", "n": obj.n, "edges": obj.edge_count()}
            else:
                payload = group_to_text(obj)
                report["results"] = {"kind": "group", "degree": obj.degree}
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(payload if payload.endswith("\n") else payload + "\n")
                report["results"]["written"] = args.out
            else:
                report["results"]["payload"] = payload
        return


def _order4_pair_of_rank(rank: int):
    for pair in latin.witness_square_pairs():
        if latin.r_orthogonality(*pair) == rank:
            return pair
    for a in latin.all_latin_squares(4):
        for b in latin.all_latin_squares(4):
            if latin.r_orthogonality(a, b) == rank:
                return a, b
    raise SynchroError(f"no order-4 pair of rank {rank} exists")


if __name__ == "__main__":
    sys.exit(main())
