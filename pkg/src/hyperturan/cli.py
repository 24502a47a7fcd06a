"""Command-line front end.

Exit codes: 0 success, 1 a verify-paper claim failed, 2 usage error,
3 unreadable or malformed hypergraph file.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import constructions
from .claims import DEFAULT_BUDGET, run_claims
from .hypergraph import (
    FormatError,
    Hypergraph,
    HypergraphError,
    are_isomorphic,
    find_copy,
    format_text,
    load,
    to_json_obj,
    vertices_of,
)
from .invariants import (
    check_hereditary,
    clique_number,
    find_hole,
    independence_number,
    property_counterexample,
)
from .proofs import PreconditionError, link_argument, run_hole_removal
from .search import MonotonicityError, density_sequence, max_edges_avoiding, min_edges_with_property

EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2
EXIT_FORMAT = 3


class UsageError(Exception):
    pass


def _emit(args, obj, text: str) -> None:
    if args.json:
        print(json.dumps(obj))
    else:
        print(text)


def _verts(mask: int) -> list[int]:
    return list(vertices_of(mask))


def _read(spec: str) -> Hypergraph:
    """A hypergraph file path, or a catalog name when no such file exists."""
    if not os.path.exists(spec):
        try:
            return constructions.catalog(spec)
        except KeyError:
            pass
    try:
        return load(spec)
    except OSError as exc:
        raise FormatError(f"cannot read {spec}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_alpha(args):
    value, witness = independence_number(_read(args.file))
    _emit(args, {"value": value, "witness": _verts(witness)},
          f"{value}\nwitness {' '.join(map(str, _verts(witness)))}")


def cmd_omega(args):
    value, witness = clique_number(_read(args.file))
    _emit(args, {"value": value, "witness": _verts(witness)},
          f"{value}\nwitness {' '.join(map(str, _verts(witness)))}")


def cmd_check_property(args):
    h = _read(args.file)
    bad = property_counterexample(h, args.q, args.p)
    obj = {"q": args.q, "p": args.p, "holds": bad is None,
           "counterexample": None if bad is None else _verts(bad)}
    text = "true" if bad is None else f"false\ncounterexample {' '.join(map(str, _verts(bad)))}"
    _emit(args, obj, text)


def cmd_find_hole(args):
    h = _read(args.file)
    hole = find_hole(h, args.a, args.max_w)
    if hole is None:
        _emit(args, {"hole": None}, "none")
    else:
        obj = {"hole": {"Z": _verts(hole.Z), "w": hole.w, "v": hole.v, "a": hole.a}}
        _emit(args, obj, f"Z {' '.join(map(str, _verts(hole.Z)))}\nw {hole.w}\nv {hole.v}")


def cmd_hereditary(args):
    h = _read(args.file)
    rep = check_hereditary(h, args.a, args.ell, seed=args.seed)
    if rep.hole is not None:
        obj = {"ok": False, "hole": {"Z": _verts(rep.hole.Z), "w": rep.hole.w, "v": rep.hole.v}}
        _emit(args, obj, f"hole found: Z {' '.join(map(str, _verts(rep.hole.Z)))} (w={rep.hole.w}, v={rep.hole.v})")
        return
    rows = [
        {"s": row.params.s, "t": row.params.t, "b": row.params.b, "bound": row.bound,
         "min_edges": row.min_edges, "slack": row.slack, "witness": _verts(row.witness),
         "checked": row.checked, "mode": row.mode}
        for row in rep.rows
    ]
    lines = ["s t b bound min_edges slack mode"]
    lines += [f"{r['s']} {r['t']} {r['b']} {r['bound']} {r['min_edges']} {r['slack']} {r['mode']}" for r in rows]
    lines.append(f"min slack {rep.min_slack}")
    _emit(args, {"ok": rep.ok, "min_slack": rep.min_slack, "rows": rows}, "\n".join(lines))


def cmd_construct(args):
    name = args.name
    if name == "balanced":
        h = constructions.balanced_union(_need(args, "n"), _need(args, "r"), _need(args, "a"))
    elif name == "crossing":
        h = constructions.crossing_construction(_need(args, "n"))
    elif name == "H1":
        h = constructions.make_H1(_need(args, "p"))
    elif name == "H2":
        h = constructions.make_H2(_need(args, "p"))
    else:
        try:
            h = constructions.catalog(name)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(to_json_obj(h)))
    else:
        sys.stdout.write(format_text(h))


def _need(args, attr):
    value = getattr(args, attr)
    if value is None:
        raise UsageError(f"construct {args.name} needs --{attr}")
    return value


def _search_out(args, res):
    obj = res.to_json_obj()
    text = (f"value {res.value}\nproved_optimal {str(res.proved_optimal).lower()}\n"
            f"nodes {res.nodes_explored}\nwitness\n{format_text(res.witness).rstrip()}")
    _emit(args, obj, text)


def cmd_search_min(args):
    res = min_edges_with_property(args.n, args.r, args.q, args.p, budget=args.budget, threads=args.threads)
    _search_out(args, res)


def cmd_search_max(args):
    patterns = [_read(p) for p in args.patterns]
    res = max_edges_avoiding(args.n, patterns, budget=args.budget, threads=args.threads)
    _search_out(args, res)


def cmd_density_seq(args):
    if args.kind == "min":
        if None in (args.r, args.q, args.p):
            raise UsageError("density-seq min needs --r, --q and --p")
        extra = {"r": args.r, "q": args.q, "p": args.p}
        kind = "min-property"
    else:
        if not args.patterns:
            raise UsageError("density-seq max needs --patterns")
        extra = {"patterns": [_read(p) for p in args.patterns]}
        kind = "max-avoiding"
    seq = density_sequence(kind, args.n, budget=args.budget, threads=args.threads, **extra)
    if args.json:
        print(json.dumps({"kind": kind, "direction": seq.direction, "monotone": seq.monotone,
                          "points": [pt.to_json_obj() for pt in seq.points]}))
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "value", "density", "proved_optimal"])
    for pt in seq.points:
        writer.writerow([pt.n, pt.value, str(pt.density), str(pt.proved_optimal).lower()])


def cmd_hole_removal(args):
    h = _read(args.file)
    trace = run_hole_removal(h, args.a, args.q, args.p, args.ell, unchecked=args.unchecked)
    if args.json:
        print(json.dumps(trace.to_json_obj()))
        return
    print("i w v q p e Z")
    for i, s in enumerate(trace.steps):
        print(f"{i} {s.w} {s.v} {s.q} {s.p} {s.excess} {','.join(map(str, _verts(s.Z)))}")
    e_final = trace.excesses[-1]
    print(f"terminal q={trace.q} p={trace.p} e={e_final} |X|={len(_verts(trace.X))}")
    print(f"outcome {trace.outcome}")


def cmd_link_arg(args):
    h = _read(args.file)
    try:
        clique = tuple(int(x) for x in args.clique.split(","))
    except ValueError:
        raise UsageError("--clique takes comma-separated vertices") from None
    arg = link_argument(h, clique, args.threshold)
    if args.json:
        print(json.dumps(arg.to_json_obj()))
        return
    m = arg.multigraph
    print(f"clique {' '.join(map(str, _verts(arg.clique)))}")
    print("pair multiplicities")
    for (x, y), k in sorted(m.pair_multiplicity.items()):
        if k:
            print(f"  {x} {y} {k}")
    if arg.threshold is None:
        print(f"size {m.size} (threshold defined for n >= 7)")
    else:
        rel = ">" if m.size > arg.threshold else "<="
        print(f"size {m.size} {rel} threshold {arg.threshold}")
    if arg.heavy is None:
        print(f"heavy triple none (threshold {args.threshold})")
    else:
        print(f"heavy triple {' '.join(map(str, arg.heavy.vertices))} weight {arg.heavy.weight}")
    if arg.copy is not None:
        print("R copy " + " ".join(f"{k}->{v}" for k, v in sorted(arg.copy.items())))


def cmd_contains(args):
    host, pattern = _read(args.host), _read(args.pattern)
    mapping = find_copy(host, pattern)
    obj = {"contains": mapping is not None,
           "witness": None if mapping is None else {str(k): v for k, v in sorted(mapping.items())}}
    if mapping is None:
        text = "false"
    else:
        text = "true\n" + " ".join(f"{k}->{v}" for k, v in sorted(mapping.items()))
    _emit(args, obj, text)


def cmd_isomorphic(args):
    same = are_isomorphic(_read(args.first), _read(args.second))
    _emit(args, {"isomorphic": same}, str(same).lower())


def cmd_verify_paper(args):
    tiers = tuple(int(t) for t in args.tiers.split(","))
    reports = run_claims(budget=args.budget, threads=args.threads, seed=args.seed, tiers=tiers)
    failed = sum(r.status == "fail" for r in reports)
    if args.json:
        print(json.dumps({"reports": [r.to_json_obj() for r in reports], "failed": failed}))
    else:
        for r in reports:
            print(r.line())
        passed = sum(r.status == "pass" for r in reports)
        skipped = sum(r.status == "skipped-budget" for r in reports)
        print(f"{passed} passed, {failed} failed, {skipped} skipped-budget")
    return EXIT_CLAIM_FAILED if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker processes for searches")
    common.add_argument("--budget", type=int, default=None,
                        help="search node budget (verify-paper default %d)" % DEFAULT_BUDGET)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="hyperturan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("alpha", cmd_alpha, "independence number")
    sp.add_argument("file")
    sp = add("omega", cmd_omega, "clique number")
    sp.add_argument("file")

    sp = add("check-property", cmd_check_property, "does every q-set contain a p-clique")
    sp.add_argument("file")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    sp = add("find-hole", cmd_find_hole, "smallest (w, v)-hole")
    sp.add_argument("file")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--max-w", type=int, default=None)

    sp = add("hereditary", cmd_hereditary, "check the hereditary counting bound")
    sp.add_argument("file")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)

    sp = add("construct", cmd_construct, "print a named hypergraph")
    sp.add_argument("name", help="balanced, crossing, H1, H2, R0, R1, R2, R, T, T_minus, T_prime or K<t>")
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--p", type=int)

    sp = add("search-min", cmd_search_min, "minimum edges with property (q, p)")
    for name in ("n", "r", "q", "p"):
        sp.add_argument(name, type=int)

    sp = add("search-max", cmd_search_max, "maximum edges avoiding patterns")
    sp.add_argument("n", type=int)
    sp.add_argument("patterns", nargs="+", help="pattern files or catalog names")

    sp = add("density-seq", cmd_density_seq, "extremal densities over a range of n")
    sp.add_argument("kind", choices=("min", "max"))
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--patterns", nargs="+")

    sp = add("hole-removal", cmd_hole_removal, "run the hole-removal procedure")
    sp.add_argument("file")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--unchecked", action="store_true", help="skip the property precondition")

    sp = add("link-arg", cmd_link_arg, "link-multigraph argument around a 4-clique")
    sp.add_argument("file")
    sp.add_argument("--clique", required=True)
    sp.add_argument("--threshold", type=int, default=11)

    sp = add("contains", cmd_contains, "is there a copy of PATTERN in HOST")
    sp.add_argument("host")
    sp.add_argument("pattern")

    sp = add("isomorphic", cmd_isomorphic, "are two hypergraphs isomorphic")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = add("verify-paper", cmd_verify_paper, "run every checkable claim")
    sp.add_argument("--tiers", default="1,2,3")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify-paper" and args.budget is None:
        args.budget = DEFAULT_BUDGET
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args) or 0
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except MonotonicityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLAIM_FAILED
    except (UsageError, PreconditionError, HypergraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
