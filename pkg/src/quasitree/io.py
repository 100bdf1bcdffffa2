"""Text and JSON serialisation.

Graphs use a plain edge-list format: a header line ``n m`` followed by ``m``
lines ``u v``. Blank lines and lines starting with ``#`` are ignored. Every
other object is a JSON document tagged with a versioned ``schema`` field.
Emitted output is canonical: ids sorted, keys sorted.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from typing import Any

from .colouring import ListAssignment, SetColouring
from .errors import ParseError, QuasiTreeError
from .graph import Graph, build_graph
from .qtp import QuasiTreePartition
from .treedec import TreeDecomposition

GRAPH_SCHEMA = "graph/1"
TREEDEC_SCHEMA = "treedec/1"
QTP_SCHEMA = "qtp/1"
COLOURING_SCHEMA = "colouring/1"
LISTS_SCHEMA = "lists/1"


def parse_edgelist(text: str) -> Graph:
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((number, line))
    if not rows:
        raise ParseError("missing 'n m' header", line=1)
    header_line, header = rows[0]
    n, m = _ints(header, 2, header_line, "header must be 'n m'")
    if n < 0 or m < 0:
        raise ParseError("negative count in header", line=header_line)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else header_line
        raise ParseError(f"header promises {m} edges, found {len(body)}", line=last)
    edges = []
    for number, line in body:
        u, v = _ints(line, 2, number, "edge line must be 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) outside 0..{n - 1}", line=number)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=number)
        edges.append((u, v))
    return build_graph(n, edges)


def _ints(line: str, count: int, number: int, message: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(message, line=number)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(message, line=number) from None


def emit_edgelist(G: Graph) -> str:
    edges = G.edges()
    return "".join([f"{G.n} {len(edges)}\n"] + [f"{u} {v}\n" for u, v in edges])


def graph_to_doc(G: Graph) -> dict:
    return {"schema": GRAPH_SCHEMA, "n": G.n, "edges": [list(e) for e in G.edges()]}


def treedec_to_doc(D: TreeDecomposition) -> dict:
    return {"schema": TREEDEC_SCHEMA, "bags": [list(b) for b in D.bags], "edges": [list(e) for e in D.edges]}


def qtp_to_doc(Q: QuasiTreePartition) -> dict:
    return {
        "schema": QTP_SCHEMA,
        "root": Q.tree.root,
        "parent": list(Q.tree.parent),
        "bags": [list(b) for b in Q.bags],
        "up_edges": [list(e) for e in Q.up_edges],
    }


def colouring_to_doc(f: SetColouring) -> dict:
    return {"schema": COLOURING_SCHEMA, "colours": [sorted(c) for c in f.colours]}


def lists_to_doc(L: ListAssignment) -> dict:
    return {"schema": LISTS_SCHEMA, "lists": [sorted(c) for c in L.lists]}


def _expect(doc: Any, schema: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"expected a {schema} object")
    if doc.get("schema") != schema:
        raise ParseError(f"expected schema {schema!r}, got {doc.get('schema')!r}")
    return doc


def _int_rows(value: Any, what: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
        for row in value
    ):
        raise ParseError(f"{what} must be an array of integer arrays")
    return value


def _wrap(build: Callable[[], Any]) -> Any:
    try:
        return build()
    except ParseError:
        raise
    except QuasiTreeError as exc:
        raise ParseError(str(exc), **exc.payload) from None


def graph_from_doc(doc: Any) -> Graph:
    doc = _expect(doc, GRAPH_SCHEMA)
    n = doc.get("n")
    if not isinstance(n, int) or n < 0:
        raise ParseError("n must be a non-negative integer")
    edges = _int_rows(doc.get("edges"), "edges")
    if any(len(e) != 2 for e in edges):
        raise ParseError("every edge must have two endpoints")
    return _wrap(lambda: build_graph(n, edges))


def treedec_from_doc(doc: Any) -> TreeDecomposition:
    doc = _expect(doc, TREEDEC_SCHEMA)
    bags = _int_rows(doc.get("bags"), "bags")
    edges = _int_rows(doc.get("edges"), "edges")
    if any(len(e) != 2 or not all(0 <= x < len(bags) for x in e) for e in edges):
        raise ParseError("tree edges must join two existing nodes")
    return TreeDecomposition.make(bags, edges)


def qtp_from_doc(doc: Any) -> QuasiTreePartition:
    doc = _expect(doc, QTP_SCHEMA)
    parent = doc.get("parent")
    if not isinstance(parent, list) or not all(p is None or isinstance(p, int) for p in parent):
        raise ParseError("parent must be an array of node ids or null")
    bags = _int_rows(doc.get("bags"), "bags")
    up = _int_rows(doc.get("up_edges"), "up_edges")
    if len(bags) != len(parent):
        raise ParseError(f"{len(bags)} bags for {len(parent)} nodes")
    root = doc.get("root")
    roots = [x for x, p in enumerate(parent) if p is None]
    if roots != [root]:
        raise ParseError(f"root {root!r} disagrees with the parent array")
    return QuasiTreePartition.make(parent, bags, up)


def colouring_from_doc(doc: Any) -> SetColouring:
    doc = _expect(doc, COLOURING_SCHEMA)
    return SetColouring.make(_int_rows(doc.get("colours"), "colours"))


def lists_from_doc(doc: Any) -> ListAssignment:
    doc = _expect(doc, LISTS_SCHEMA)
    return ListAssignment.make(_int_rows(doc.get("lists"), "lists"))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def read_graph_text(text: str) -> Graph:
    """Parse either an edge list or a JSON document holding a graph (at the
    top level or under a ``graph`` key)."""
    if text.lstrip().startswith("{"):
        doc = loads(text)
        return graph_from_doc(doc.get("graph", doc))
    return parse_edgelist(text)


def qtp_to_dot(Q: QuasiTreePartition) -> str:
    lines = ["graph qtp {", "  node [shape=box];"]
    for x, bag in enumerate(Q.bags):
        label = " ".join(str(v) for v in bag)
        lines.append(f'  n{x} [label="{x}: {label}"];')
    for x, p in enumerate(Q.tree.parent):
        if p is not None:
            lines.append(f"  n{p} -- n{x};")
    for v, ends in enumerate(Q.up_edges):
        for w in ends:
            lines.append(f'  n{Q.node_of[v]} -- n{Q.node_of[w]} [style=dashed, label="{v}-{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def treedec_to_dot(D: TreeDecomposition) -> str:
    lines = ["graph treedec {", "  node [shape=box];"]
    for x, bag in enumerate(D.bags):
        lines.append(f'  n{x} [label="{x}: {" ".join(str(v) for v in bag)}"];')
    for a, b in D.edges:
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
