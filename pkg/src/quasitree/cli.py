"""Command-line interface.

Every command reads one document (stdin or ``--in``) and writes one JSON
document (stdout or ``--out``), so commands can be piped::

    quasitree gen grid --n 4 | quasitree build degeneracy | quasitree verify qtp

Exit codes: 0 success, 1 verification failure, 2 precondition or pattern
violation, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import io
from .colouring import (
    ListAssignment,
    clean_bound,
    colour_clean_qtp,
    colour_fractional_qtp,
    colour_heavy_qtp,
    fractional_bound,
    heavy_bound,
    validate_colouring,
)
from .construct import (
    BuildParams,
    build_qtp_degeneracy,
    build_qtp_excluded,
    build_qtp_excluded_clean,
    build_qtp_kst_free,
    excluded_t,
)
from .errors import BadParams, ParseError, QuasiTreeError
from .generators import generate
from .graph import Graph, vertex_set
from .patterns import c_bound, extension_or_skewer, find_kst, find_kst_star, rho_oracle
from .patterns.search import DEFAULT_CAP
from .qtp import heavy_children, loads_and_weight, validate_qtp
from .treedec import heuristic_treedec, treewidth_exact_small, validate_treedec

BUNDLE_SCHEMA = "bundle/1"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors map to exit code 3
        raise BadParams(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="inp", help="input file (default: stdin)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--rho", type=int)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="search budget for exhaustive searches")
    p.add_argument("--set", action="append", default=[], metavar="NAME=IDS", help="vertex set, e.g. S=0,1,2")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quasitree", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph family")
    gen.add_argument("family")
    gen.add_argument("--n", type=int)
    gen.add_argument("--p", type=float)
    gen.add_argument("--format", choices=["json", "edgelist"], default="json")
    _common(gen)

    td = sub.add_parser("treedec", help="heuristic or exact tree-decomposition")
    td.add_argument("--strategy", choices=["min-degree", "min-fill", "exact"], default="min-fill")
    _common(td)

    for name, choices, text in (
        ("build", ["kst-free", "excluded-clean", "excluded", "degeneracy"], "construct a quasi-tree-partition"),
        ("verify", ["qtp", "treedec", "colouring"], "check a partition, decomposition or colouring"),
        ("colour", ["clean", "heavy", "fractional"], "list-colour from a partition"),
        ("detect", ["kst", "kst-star", "extension-skewer"], "search for a bipartite pattern"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("variant", choices=choices)
        _common(p)
    rho = sub.add_parser("rho", help="lower bound (exact for small n) on rho(G)")
    rho.add_argument("--max-branch", type=int, default=8)
    _common(rho)
    return parser


def _sets(args) -> dict[str, tuple[int, ...]]:
    out = {}
    for item in args.set:
        name, sep, ids = item.partition("=")
        if not sep:
            raise BadParams(f"--set expects NAME=IDS, got {item!r}")
        try:
            out[name] = vertex_set(int(x) for x in ids.split(",") if x.strip())
        except ValueError:
            raise BadParams(f"--set {name}: ids must be integers") from None
    return out


def _read(args) -> str:
    if args.inp:
        with open(args.inp, encoding="ascii") as fh:
            return fh.read()
    return sys.stdin.read()


def _bundle(text: str) -> dict:
    """Any input as a bundle dict with at least a ``graph`` entry."""
    if not text.lstrip().startswith("{"):
        return {"graph": io.graph_to_doc(io.parse_edgelist(text))}
    doc = io.loads(text)
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    if doc.get("schema") == io.GRAPH_SCHEMA:
        return {"graph": doc}
    if "graph" not in doc:
        raise ParseError("document carries no graph")
    return doc


def _decomposition(G: Graph, bundle: dict, strategy: str = "min-fill"):
    if "treedec" in bundle:
        return io.treedec_from_doc(bundle["treedec"]), "input"
    return heuristic_treedec(G, strategy), f"heuristic:{strategy}"


def _smallest_free_t(G: Graph, s: int, cap: int) -> int:
    t = 1
    while find_kst_star(G, s, t, cap) is not None:
        t += 1
    return t


def cmd_gen(args) -> tuple[int, Any]:
    G = generate(args.family, n=args.n, k=args.k, s=args.s, t=args.t, a=args.a, b=args.b, seed=args.seed, p=args.p)
    if args.format == "edgelist":
        return 0, io.emit_edgelist(G)
    return 0, io.graph_to_doc(G)


def cmd_treedec(args) -> tuple[int, Any]:
    bundle = _bundle(_read(args))
    G = io.graph_from_doc(bundle["graph"])
    if args.strategy == "exact":
        # exact width is reported next to heuristic bags
        D = heuristic_treedec(G, "min-fill")
        report = {"width": D.width, "treewidth": treewidth_exact_small(G)}
    else:
        D = heuristic_treedec(G, args.strategy)
        report = {"width": D.width}
    if args.dot:
        return 0, io.treedec_to_dot(D)
    return 0, {"schema": BUNDLE_SCHEMA, "graph": bundle["graph"], "treedec": io.treedec_to_doc(D), "report": report}


def cmd_build(args) -> tuple[int, Any]:
    bundle = _bundle(_read(args))
    G = io.graph_from_doc(bundle["graph"])
    out: dict = {"schema": BUNDLE_SCHEMA, "graph": bundle["graph"]}
    if args.variant == "degeneracy":
        Q = build_qtp_degeneracy(G)
        params: dict = {}
    else:
        D, source = _decomposition(G, bundle)
        k = args.k if args.k is not None else D.width + 1
        rho = args.rho if args.rho is not None else max(1, D.width)
        s = args.s if args.s is not None else 1
        S = _sets(args).get("S", ())
        if args.variant == "kst-free":
            t = args.t if args.t is not None else _smallest_free_t(G, s, args.cap)
            P = BuildParams(s=s, k=k, rho=rho, t=t, S=S, cap=args.cap)
            Q = build_qtp_kst_free(G, D, P)
        else:
            if args.a is None or args.b is None:
                raise BadParams(f"build {args.variant} needs --a and --b")
            clean = args.variant == "excluded-clean"
            t = excluded_t(s, args.a, args.b, k if clean else None)
            P = BuildParams(s=s, k=k, rho=rho, t=t, a=args.a, b=args.b, S=S, cap=args.cap)
            Q = (build_qtp_excluded_clean if clean else build_qtp_excluded)(G, D, P)
        params = {"s": s, "t": t, "k": k, "rho": rho, "c": c_bound(s, t, rho), "S": list(S)}
        if args.a is not None:
            params.update(a=args.a, b=args.b)
        out["treedec"] = io.treedec_to_doc(D)
        out["treedec_source"] = source
    if args.dot:
        return 0, io.qtp_to_dot(Q)
    report = validate_qtp(G, Q)
    out["qtp"] = io.qtp_to_doc(Q)
    out["params"] = params
    out["report"] = {"width": report.width, "quasiness": report.quasiness, "degree": report.degree, "clean": report.clean}
    return 0, out


def cmd_verify(args) -> tuple[int, Any]:
    bundle = _bundle(_read(args))
    G = io.graph_from_doc(bundle["graph"])
    if args.variant == "treedec":
        if "treedec" not in bundle:
            raise ParseError("document carries no treedec")
        r = validate_treedec(G, io.treedec_from_doc(bundle["treedec"]))
        return (0 if r.valid else 1), {"valid": r.valid, "width": r.width, "violations": r.violations}
    if args.variant == "qtp":
        if "qtp" not in bundle:
            raise ParseError("document carries no qtp")
        Q = io.qtp_from_doc(bundle["qtp"])
        s_heavy = (args.s + 1) if args.s is not None else 1
        r = validate_qtp(G, Q, s_heavy)
        doc = {
            "valid": r.valid,
            "clean": r.clean,
            "width": r.width,
            "quasiness": r.quasiness,
            "degree": r.degree,
            "heavy_threshold": s_heavy,
            "max_heavy_children": r.max_heavy_children,
            "violations": r.violations,
        }
        if r.clean:
            doc["weight"] = loads_and_weight(G, Q)[1]
        return (0 if r.valid else 1), doc
    if "colouring" not in bundle:
        raise ParseError("document carries no colouring")
    f = io.colouring_from_doc(bundle["colouring"])
    L = io.lists_from_doc(bundle["lists"]) if "lists" in bundle else None
    r = validate_colouring(G, f, L)
    doc = {"proper": r.proper, "clustering": r.clustering, "defect": r.defect, "list_ok": r.list_ok}
    ok = r.list_ok
    bound = bundle.get("report", {}).get("bound")
    if bound is not None:
        doc["bound"] = bound
        ok = ok and r.clustering <= bound
    doc["ok"] = ok
    return (0 if ok else 1), doc


def cmd_colour(args) -> tuple[int, Any]:
    bundle = _bundle(_read(args))
    G = io.graph_from_doc(bundle["graph"])
    if "qtp" not in bundle:
        raise ParseError("document carries no qtp; run build first")
    Q = io.qtp_from_doc(bundle["qtp"])
    report = validate_qtp(G, Q)
    r, w, d = report.quasiness, report.width, report.degree
    ell = args.ell
    if args.variant == "clean":
        need = ell * (r + 1) + 1
    elif args.variant == "heavy":
        need, ell = r + 2, 1
    else:
        need = (r + 1) * ell + 1
    if "lists" in bundle:
        L = io.lists_from_doc(bundle["lists"])
    else:
        L = ListAssignment.random(G.n, need, 2 * need, args.seed)
    if args.variant == "clean":
        f = colour_clean_qtp(G, Q, L, ell)
        bound = clean_bound(ell, w, d)
    elif args.variant == "heavy":
        cap = max(heavy_children(G, Q, r + 2), default=0)
        f = colour_heavy_qtp(G, Q, L, cap)
        bound = heavy_bound(w, cap)
    else:
        f = colour_fractional_qtp(G, Q, L, ell)
        bound = fractional_bound(w, d)
    check = validate_colouring(G, f, L)
    out = dict(bundle)
    out.update(
        schema=BUNDLE_SCHEMA,
        lists=io.lists_to_doc(L),
        colouring=io.colouring_to_doc(f),
        report={"ell": ell, "clustering": check.clustering, "defect": check.defect, "list_ok": check.list_ok, "bound": bound},
    )
    return 0, out


def cmd_detect(args) -> tuple[int, Any]:
    G = io.read_graph_text(_read(args))
    s = args.s if args.s is not None else 1
    if args.variant == "extension-skewer":
        X = _sets(args).get("X")
        if X is None:
            if args.t is None:
                raise BadParams("extension-skewer needs --set X=... or --t to locate X")
            hit = find_kst(G, s, args.t, args.cap)
            if hit is None:
                return 0, {"found": False}
            X = hit.X
        if args.a is None or args.b is None:
            raise BadParams("extension-skewer needs --a and --b")
        w = extension_or_skewer(G, X, args.a, args.b)
    else:
        if args.t is None:
            raise BadParams(f"detect {args.variant} needs --t")
        w = (find_kst if args.variant == "kst" else find_kst_star)(G, s, args.t, args.cap)
    if w is None:
        return 0, {"found": False}
    return 0, {"found": True, "witness": w.to_dict()}


def cmd_rho(args) -> tuple[int, Any]:
    G = io.read_graph_text(_read(args))
    return 0, rho_oracle(G, args.max_branch, args.cap).to_dict()


COMMANDS = {
    "gen": cmd_gen,
    "treedec": cmd_treedec,
    "build": cmd_build,
    "verify": cmd_verify,
    "colour": cmd_colour,
    "detect": cmd_detect,
    "rho": cmd_rho,
}


def _write(args, payload: Any) -> None:
    text = payload if isinstance(payload, str) else io.dumps(payload)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = None
    try:
        args = make_parser().parse_args(argv)
        code, payload = COMMANDS[args.command](args)
    except QuasiTreeError as exc:
        sys.stdout.write(io.dumps(exc.to_dict()))
        return exc.exit_code
    except OSError as exc:
        sys.stdout.write(io.dumps({"error": "OSError", "message": str(exc)}))
        return 3
    _write(args, payload)
    return code
