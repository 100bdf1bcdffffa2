"""Graph families used as inputs and test corpora."""

from __future__ import annotations

import itertools
import random

from .errors import BadParams, UnknownFamily
from .graph import Graph, build_graph


def _need(cond: bool, msg: str, **params) -> None:
    if not cond:
        raise BadParams(msg, **params)


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1", n=n)
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3", n=n)
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1", n=n)
    return build_graph(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return build_graph(n, [])


def grid(rows: int, cols: int | None = None) -> Graph:
    """rows x cols grid; vertex (i, j) has id i*cols + j."""
    cols = rows if cols is None else cols
    _need(rows >= 1 and cols >= 1, "grid needs positive sides", rows=rows, cols=cols)
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges)


def fan(n: int) -> Graph:
    """Vertex 0 dominating the path 1..n-1."""
    _need(n >= 2, "fan needs n >= 2", n=n)
    edges = [(0, i) for i in range(1, n)] + [(i, i + 1) for i in range(1, n - 1)]
    return build_graph(n, edges)


def star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def closure_tree(k: int, n: int) -> Graph:
    """C_{k,n}: closure of the complete n-ary tree with all leaves at depth k-1."""
    _need(k >= 1 and n >= 1, "closure needs k, n >= 1", k=k, n=n)
    parent = [None]
    level = [0]
    for depth in range(1, k):
        for v in range(len(parent)):
            if level[v] == depth - 1:
                for _ in range(n):
                    parent.append(v)
                    level.append(depth)
    edges = []
    for v, p in enumerate(parent):
        while p is not None:
            edges.append((p, v))
            p = parent[p]
    return build_graph(len(parent), edges)


def kst(s: int, t: int) -> Graph:
    """K_{s,t} with the s-side on ids 0..s-1."""
    _need(s >= 1 and t >= 1, "kst needs s, t >= 1", s=s, t=t)
    return build_graph(s + t, [(x, s + y) for x in range(s) for y in range(t)])


def kst_star(s: int, t: int) -> Graph:
    """K*_{s,t}: K_{s,t} plus one private vertex per pair of the s-side."""
    _need(s >= 1 and t >= 1, "kst_star needs s, t >= 1", s=s, t=t)
    edges = [(x, s + y) for x in range(s) for y in range(t)]
    v = s + t
    for a, b in itertools.combinations(range(s), 2):
        edges += [(v, a), (v, b)]
        v += 1
    return build_graph(v, edges)


def extension(s: int, a: int) -> Graph:
    """A 1-extension of K_{s,a}.

    Ids: X = 0..s-1, hub path h_1..h_a = s..s+a-1, A = s+a..s+2a-1. The hub
    path contracts to the extra vertex: h_1 sees all of X and h_i sees a_i.
    """
    _need(s >= 1 and a >= 1, "extension needs s, a >= 1", s=s, a=a)
    hub = list(range(s, s + a))
    side = list(range(s + a, s + 2 * a))
    edges = [(x, y) for x in range(s) for y in side]
    edges += [(x, hub[0]) for x in range(s)]
    edges += list(zip(hub, hub[1:]))
    edges += list(zip(hub, side))
    return build_graph(s + 2 * a, edges)


def skewered(s: int, b: int) -> Graph:
    """K_{s,b} plus the path s, s+1, ..., s+b-1 through the b-side."""
    _need(s >= 1 and b >= 1, "skewered needs s, b >= 1", s=s, b=b)
    edges = [(x, s + y) for x in range(s) for y in range(b)]
    edges += [(s + i, s + i + 1) for i in range(b - 1)]
    return build_graph(s + b, edges)


def random_tree(n: int, seed: int) -> Graph:
    rng = random.Random(seed)
    return build_graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def complete_binary_tree(n: int) -> Graph:
    return build_graph(n, [(v, (v - 1) // 2) for v in range(1, n)])


def random_partial_ktree(n: int, k: int, seed: int, keep: float = 0.8) -> Graph:
    """Random k-tree on n vertices with each edge kept with probability
    ``keep``; tree-width is at most k."""
    _need(k >= 1 and n >= 1, "partial k-tree needs n, k >= 1", n=n, k=k)
    rng = random.Random(seed)
    base = min(n, k + 1)
    edges = list(itertools.combinations(range(base), 2))
    cliques = [tuple(range(base))] if base == k + 1 else []
    for v in range(base, n):
        host = rng.choice(cliques)
        face = tuple(sorted(rng.sample(host, k)))
        edges += [(u, v) for u in face]
        for drop in face:
            cliques.append(tuple(sorted(set(face) - {drop} | {v})))
        cliques.append(face + (v,))
    return build_graph(n, [e for e in edges if rng.random() < keep])


def random_gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return build_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


FAMILIES = {
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("n",)),
    "empty": (empty, ("n",)),
    "grid": (grid, ("n",)),
    "fan": (fan, ("n",)),
    "star": (star, ("n",)),
    "closure": (closure_tree, ("k", "n")),
    "kst": (kst, ("s", "t")),
    "kst-star": (kst_star, ("s", "t")),
    "extension": (extension, ("s", "a")),
    "skewered": (skewered, ("s", "b")),
    "random-tree": (random_tree, ("n", "seed")),
    "partial-ktree": (random_partial_ktree, ("n", "k", "seed")),
    "gnp": (random_gnp, ("n", "p", "seed")),
}


def generate(family: str, **params) -> Graph:
    """Build a named family; ``params`` must supply exactly the family's
    parameters (extra ``None`` values are ignored)."""
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise UnknownFamily(f"unknown family {family!r}", known=sorted(FAMILIES)) from None
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise BadParams(f"family {family!r} needs {', '.join(missing)}", missing=missing)
    return fn(*(params[p] for p in names))
