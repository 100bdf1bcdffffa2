"""Exhaustive searches for the excluded structures and for rho(G)."""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Iterator
from math import comb

from ..errors import BadParams, SearchCapExceeded
from ..graph import Graph, components, neighbours_at_least, vertex_set
from .matching import Matcher
from .witness import PatternWitness, RhoResult

DEFAULT_CAP = 10**6


def c_bound(s: int, t: int, rho: int) -> int:
    """The constant c(s, t, rho): t when s = 1, else 1 + rho + (t-1)*C(rho, s-1)."""
    if min(s, t, rho) < 1:
        raise BadParams("s, t and rho must all be at least 1", s=s, t=t, rho=rho)
    if s == 1:
        return t
    return 1 + rho + (t - 1) * comb(rho, s - 1)


def _rich_sets(G: Graph, s: int, t: int, cap: int) -> Iterator[tuple[tuple[int, ...], frozenset[int]]]:
    """Lexicographic s-sets X with at least ``t`` common neighbours, paired
    with their common neighbourhoods.

    Prefixes whose common neighbourhood is already smaller than ``t`` are
    pruned; ``cap`` bounds the number of candidate extensions examined.
    """
    if s < 1 or t < 1:
        raise BadParams("s and t must be at least 1", s=s, t=t)
    if s > G.n:
        return
    nbrs = G.nbrs
    work = 0

    def extend(chosen: list[int], common: frozenset[int] | None, start: int):
        nonlocal work
        if len(chosen) == s:
            yield tuple(chosen), common
            return
        for v in range(start, G.n - (s - len(chosen)) + 1):
            work += 1
            if work > cap:
                raise SearchCapExceeded(f"search examined more than {cap} candidate sets", cap=cap)
            nxt = nbrs[v] if common is None else common & nbrs[v]
            if len(nxt) < t:
                continue
            chosen.append(v)
            yield from extend(chosen, nxt, v + 1)
            chosen.pop()

    yield from extend([], None, 0)


def find_kst(G: Graph, s: int, t: int, cap: int = DEFAULT_CAP) -> PatternWitness | None:
    """First K_{s,t} (X lexicographically least), or ``None`` if there is none."""
    for X, common in _rich_sets(G, s, t, cap):
        return PatternWitness("Kst", X, tuple(sorted(common)[:t]))
    return None


def find_kst_star(G: Graph, s: int, t: int, cap: int = DEFAULT_CAP) -> PatternWitness | None:
    """First K*_{s,t}: a K_{s,t} plus a private vertex for every pair of X.

    Pair vertices are matched by augmenting paths, offering vertices outside
    the common neighbourhood first so as many common neighbours as possible
    stay available for Y.
    """
    nbrs = G.nbrs
    for X, common in _rich_sets(G, s, t, cap):
        pairs = list(itertools.combinations(X, 2))
        xs = set(X)
        options = [sorted((nbrs[a] & nbrs[b]) - xs) for a, b in pairs]
        matcher = Matcher(options)
        matcher.grow(lambda r: r not in common)
        matcher.grow()
        if not matcher.perfect:
            continue
        free = sorted(common - set(matcher.right))
        if len(free) < t:
            continue
        triples = tuple((a, b, m) for (a, b), m in zip(pairs, matcher.left))
        return PatternWitness("KstStar", X, tuple(free[:t]), pairs=triples)
    return None


def extension_or_skewer(G: Graph, X: Iterable[int], a: int, b: int) -> PatternWitness | None:
    """Find a 1-extension of K_{s,a} or a skewered K_{s,b} through ``X``.

    Works in the component of G - X holding the most vertices adjacent to
    all of X. A breadth-first spanning tree is grown from the smallest such
    vertex; a root path meeting ``b`` of them gives a skewered K_{s,b}.
    Otherwise they are grouped by how many of them lie strictly above in the
    tree; each group is an antichain, and a group of size ``a`` together
    with the tree paths leading to it gives a 1-extension. Guaranteed to
    succeed once the component holds at least (a-1)(b-1)+1 such vertices;
    below that it may return ``None``.
    """
    X = vertex_set(X)
    s = len(X)
    if s == 0 or a < 2 or b < 1:
        raise BadParams("need |X| >= 1, a >= 2, b >= 1", s=s, a=a, b=b)
    marked = set(neighbours_at_least(G, X, s))
    rest = set(range(G.n)) - set(X)
    best = None
    for comp in components(G, rest):
        count = sum(1 for v in comp if v in marked)
        if count and (best is None or count > best[0]):
            best = (count, comp)
    if best is None:
        return None
    comp = set(best[1])
    root = min(v for v in comp if v in marked)
    parent = {root: None}
    above = {root: 0}  # marked vertices strictly above v
    on_path = {root: 1}  # marked vertices on the root path, v included
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in G.adjacency[v]:
            if w in comp and w not in parent:
                parent[w] = v
                above[w] = on_path[v]
                on_path[w] = on_path[v] + (w in marked)
                order.append(w)
                queue.append(w)

    deep = [v for v in order if v in marked and on_path[v] >= b]
    if deep:
        v = deep[0]
        path = []
        while v is not None:
            path.append(v)
            v = parent[v]
        path.reverse()
        Y = [v for v in path if v in marked]
        return PatternWitness("Skewered", X, vertex_set(Y), path=tuple(path))

    classes: dict[int, list[int]] = {}
    for v in order:
        if v in marked:
            classes.setdefault(above[v], []).append(v)
    for level in sorted(classes):
        members = classes[level]
        if len(members) < a:
            continue
        A = sorted(members)[:a]
        hub = set()
        for v in A:
            u = parent[v]
            while u is not None and u not in hub:
                hub.add(u)
                u = parent[u]
        return PatternWitness("Extension", X, tuple(A), hub=vertex_set(hub))
    return None


def _midpoint_options(G: Graph, B: tuple[int, ...]) -> dict[tuple[int, int], list[int]]:
    inside = set(B)
    nbrs = G.nbrs
    out = {}
    for u, v in itertools.combinations(B, 2):
        mids = sorted((nbrs[u] & nbrs[v]) - inside)
        if mids:
            out[(u, v)] = mids
    return out


def _subdivision_with_min_degree(G: Graph, B: tuple[int, ...], delta: int):
    """An H on branch set ``B`` with min degree >= ``delta`` whose
    1-subdivision sits in G, as a list of (u, v, midpoint); else None."""
    options = _midpoint_options(G, B)
    incident: dict[int, list[tuple[int, int]]] = {v: [] for v in B}
    for e in options:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    if any(len(incident[v]) < delta for v in B):
        return None
    if len(B) * delta > 2 * (G.n - len(B)):
        return None

    chosen: list[tuple[int, int]] = []
    banned: set[tuple[int, int]] = set()
    degree = dict.fromkeys(B, 0)

    def matchable(edges):
        m = Matcher([options[e] for e in edges])
        m.grow()
        return m if m.perfect else None

    def search():
        short = [v for v in B if degree[v] < delta]
        if not short:
            m = matchable(chosen)
            return None if m is None else list(zip(chosen, m.left))
        picked = set(chosen)

        def avail(v):
            return [e for e in incident[v] if e not in picked and e not in banned]

        v = min(short, key=lambda u: (len(avail(u)) - (delta - degree[u]), u))
        edges = avail(v)
        if len(edges) < delta - degree[v]:
            return None
        newly_banned = []
        result = None
        for e in edges:
            chosen.append(e)
            if matchable(chosen) is not None:
                degree[e[0]] += 1
                degree[e[1]] += 1
                result = search()
                degree[e[0]] -= 1
                degree[e[1]] -= 1
            chosen.pop()
            if result is not None:
                break
            banned.add(e)
            newly_banned.append(e)
        for e in newly_banned:
            banned.discard(e)
        return result

    found = search()
    if found is None:
        return None
    return [(u, v, mid) for (u, v), mid in found]


def rho_oracle(G: Graph, max_branch: int = 8, cap: int = DEFAULT_CAP) -> RhoResult:
    """Largest min degree of an H whose 1-subdivision is a subgraph of G,
    over branch sets of at most ``max_branch`` vertices.

    ``exact`` is set when the search for min degree ``value + 1`` covered
    every branch-set size that could possibly work: an H of min degree
    delta on b branch vertices needs b + b*delta/2 <= n vertices of G.
    Otherwise ``value`` is only a certified lower bound.
    """
    if max_branch < 1:
        raise BadParams("max_branch must be at least 1", max_branch=max_branch)
    if G.n == 0:
        return RhoResult(0, exact=True)
    total = sum(comb(G.n, r) for r in range(1, min(max_branch, G.n) + 1))
    if total > cap:
        raise SearchCapExceeded(f"{total} branch sets exceed the cap {cap}", cap=cap)
    best = RhoResult(0, (0,), (), exact=False)
    exact = False
    for delta in itertools.count(1):
        found = None
        pool = [v for v in range(G.n) if G.degree(v) >= delta]
        largest = min(len(pool), 2 * G.n // (2 + delta))
        for size in range(delta + 1, min(max_branch, largest) + 1):
            for B in itertools.combinations(pool, size):
                found = _realise(G, B, delta)
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            exact = max_branch >= largest
            break
        best = found
    return RhoResult(best.value, best.branch, best.midpoints, exact=exact)


def _realise(G: Graph, B: tuple[int, ...], delta: int) -> RhoResult | None:
    triples = _subdivision_with_min_degree(G, B, delta)
    if triples is None:
        return None
    deg = dict.fromkeys(B, 0)
    for u, v, _ in triples:
        deg[u] += 1
        deg[v] += 1
    return RhoResult(min(deg.values()), B, tuple(sorted(triples)))
