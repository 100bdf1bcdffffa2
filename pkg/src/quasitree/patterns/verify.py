"""Independent re-verification of witnesses.

Deliberately self-contained: only raw adjacency lookups, nothing shared with
the search routines.
"""

from __future__ import annotations

from itertools import combinations

from ..graph import Graph
from .witness import PatternWitness, RhoResult


def _adj(G: Graph, u: int, v: int) -> bool:
    return v in G.nbrs[u]


def _complete(G: Graph, X, Y) -> bool:
    return all(_adj(G, x, y) for x in X for y in Y)


def witness_problems(G: Graph, w: PatternWitness, s: int | None = None, size: int | None = None) -> list[str]:
    """Empty list iff ``w`` is a genuine occurrence in ``G``.

    ``s`` and ``size`` optionally pin |X| and |Y|.
    """
    problems = []
    named = list(w.X) + list(w.Y) + [p[2] for p in w.pairs] + list(w.hub) + list(w.path)
    if any(not 0 <= v < G.n for v in named):
        return ["vertex id out of range"]
    if len(set(w.X)) != len(w.X) or len(set(w.Y)) != len(w.Y):
        problems.append("repeated vertex in X or Y")
    if set(w.X) & set(w.Y):
        problems.append("X and Y overlap")
    if s is not None and len(w.X) != s:
        problems.append(f"|X| = {len(w.X)}, expected {s}")
    if size is not None and len(w.Y) != size:
        problems.append(f"|Y| = {len(w.Y)}, expected {size}")
    if not _complete(G, w.X, w.Y):
        problems.append("X-Y is not complete bipartite")

    if w.kind == "Kst":
        pass
    elif w.kind == "KstStar":
        wanted = {tuple(sorted(p)) for p in combinations(w.X, 2)}
        got = [tuple(sorted(p[:2])) for p in w.pairs]
        if set(got) != wanted or len(got) != len(wanted):
            problems.append("pair map does not cover each pair of X exactly once")
        extras = [p[2] for p in w.pairs]
        if len(set(extras)) != len(extras):
            problems.append("pair vertices are not distinct")
        if set(extras) & (set(w.X) | set(w.Y)):
            problems.append("pair vertex inside X or Y")
        for a, b, m in w.pairs:
            if not (_adj(G, m, a) and _adj(G, m, b)):
                problems.append(f"pair vertex {m} not adjacent to both {a} and {b}")
    elif w.kind == "Extension":
        hub = set(w.hub)
        if not hub:
            problems.append("empty hub")
        if hub & (set(w.X) | set(w.Y)) or len(hub) != len(w.hub):
            problems.append("hub overlaps X or Y")
        if hub:
            start = next(iter(hub))
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in G.adjacency[u]:
                    if v in hub and v not in seen:
                        seen.add(v)
                        stack.append(v)
            if seen != hub:
                problems.append("hub is not connected")
            for v in list(w.X) + list(w.Y):
                if not any(_adj(G, v, h) for h in hub):
                    problems.append(f"vertex {v} has no neighbour in the hub")
    elif w.kind == "Skewered":
        path = list(w.path)
        if len(set(path)) != len(path):
            problems.append("path repeats a vertex")
        if set(path) & set(w.X):
            problems.append("path meets X")
        if not set(w.Y) <= set(path):
            problems.append("path misses part of Y")
        for u, v in zip(path, path[1:]):
            if not _adj(G, u, v):
                problems.append(f"path step ({u}, {v}) is not an edge")
    else:
        problems.append(f"unknown witness kind {w.kind!r}")
    return problems


def verify_witness(G: Graph, w: PatternWitness, s: int | None = None, size: int | None = None) -> bool:
    return not witness_problems(G, w, s, size)


def verify_rho(G: Graph, r: RhoResult) -> bool:
    """Check that ``r`` exhibits a 1-subdivided H of min degree ``r.value``."""
    branch = list(r.branch)
    if not branch or len(set(branch)) != len(branch):
        return False
    if any(not 0 <= v < G.n for v in branch):
        return False
    mids = [m for _, _, m in r.midpoints]
    if len(set(mids)) != len(mids) or set(mids) & set(branch):
        return False
    degree = dict.fromkeys(branch, 0)
    seen_edges = set()
    for a, b, m in r.midpoints:
        if a not in degree or b not in degree or a == b:
            return False
        key = (min(a, b), max(a, b))
        if key in seen_edges:
            return False
        seen_edges.add(key)
        if not (_adj(G, a, m) and _adj(G, b, m)):
            return False
        degree[a] += 1
        degree[b] += 1
    return min(degree.values()) == r.value
