"""Clustered list-colourings driven by quasi-tree-partitions, and a colouring
verifier that only looks at the graph."""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import BadParams, HeavyCapViolated, InvalidDecomposition, ListsTooSmall, NotClean
from .graph import Graph
from .qtp import QuasiTreePartition, heavy_children, validate_qtp


@dataclass(frozen=True)
class ListAssignment:
    """``lists[v]`` is the set of colour ids allowed at v."""

    lists: tuple[frozenset[int], ...]

    @classmethod
    def make(cls, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(frozenset(int(c) for c in L) for L in lists))

    @classmethod
    def uniform(cls, n: int, colours: Iterable[int]) -> "ListAssignment":
        same = frozenset(colours)
        return cls((same,) * n)

    @classmethod
    def random(cls, n: int, size: int, palette: int, seed: int) -> "ListAssignment":
        """Each list is a uniform ``size``-subset of ``0..palette-1``."""
        if size > palette:
            raise BadParams("list size exceeds palette", size=size, palette=palette)
        rng = random.Random(seed)
        return cls(tuple(frozenset(rng.sample(range(palette), size)) for _ in range(n)))

    @property
    def min_size(self) -> int:
        return min((len(L) for L in self.lists), default=0)


@dataclass(frozen=True)
class SetColouring:
    """``colours[v]`` is the colour set f(v); every set has the same size."""

    colours: tuple[frozenset[int], ...]

    @classmethod
    def make(cls, colours: Iterable[Iterable[int]]) -> "SetColouring":
        return cls(tuple(frozenset(int(c) for c in f) for f in colours))

    @property
    def q(self) -> int:
        return len(self.colours[0]) if self.colours else 0


@dataclass(frozen=True)
class ColouringReport:
    proper: bool
    clustering: int
    defect: int
    list_ok: bool


def validate_colouring(G: Graph, f: SetColouring, L: ListAssignment | None = None) -> ColouringReport:
    """Exact clustering and defect, computed colour class by colour class."""
    if len(f.colours) != G.n:
        raise BadParams(f"{len(f.colours)} colour sets for {G.n} vertices")
    if len({len(c) for c in f.colours}) > 1:
        raise BadParams("colour sets are not of uniform size")
    classes: dict[int, set[int]] = {}
    for v, cs in enumerate(f.colours):
        for c in cs:
            classes.setdefault(c, set()).add(v)
    clustering = defect = 0
    for members in classes.values():
        seen: set[int] = set()
        for start in members:
            if start in seen:
                continue
            seen.add(start)
            stack = [start]
            size = 0
            while stack:
                v = stack.pop()
                size += 1
                inside = 0
                for w in G.adjacency[v]:
                    if w in members:
                        inside += 1
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                defect = max(defect, inside)
            clustering = max(clustering, size)
    list_ok = True
    if L is not None:
        list_ok = len(L.lists) == G.n and all(f.colours[v] <= L.lists[v] for v in range(G.n))
    return ColouringReport(defect == 0, clustering, defect, list_ok)


def clean_bound(ell: int, k: int, d: int) -> int:
    """max{l k^2, 2k d^(l k - 1)} for width k and tree degree d."""
    return max(ell * k * k, 2 * k * d ** (ell * k - 1))


def heavy_bound(w: int, d: int) -> int:
    """w (d+1)^w for width w and at most d heavy children per node."""
    return w * (d + 1) ** w


def fractional_bound(w: int, d: int) -> int:
    """w d^w for width w and tree degree d."""
    return w * d**w


class _Components:
    """Union-find over (vertex, colour) pairs, tracking for each
    monochromatic component the earliest position of a member."""

    def __init__(self, position: Sequence[int]) -> None:
        self.position = position
        self.up: dict[tuple[int, int], tuple[int, int]] = {}
        self.first: dict[tuple[int, int], int] = {}

    def find(self, key: tuple[int, int]) -> tuple[int, int]:
        root = key
        while self.up[root] != root:
            root = self.up[root]
        while self.up[key] != root:
            self.up[key], key = root, self.up[key]
        return root

    def add(self, v: int, colour: int) -> None:
        key = (v, colour)
        self.up[key] = key
        self.first[key] = self.position[v]

    def union(self, a: tuple[int, int], b: tuple[int, int]) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if self.first[ra] > self.first[rb]:
                ra, rb = rb, ra
            self.up[rb] = ra

    def age(self, v: int, colour: int) -> tuple[int, int]:
        """Sort key of the component through (v, colour); smaller is older."""
        return (self.first[self.find((v, colour))], colour)


class _Overlay:
    """Scratch supergraph used to track monochromatic components."""

    def __init__(self, n: int) -> None:
        self.adj: list[set[int]] = [set() for _ in range(n)]

    def edge(self, u: int, v: int) -> None:
        if u != v:
            self.adj[u].add(v)
            self.adj[v].add(u)

    def clique(self, vs: Sequence[int]) -> None:
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                self.edge(u, v)

    def join(self, us: Sequence[int], vs: Sequence[int]) -> None:
        for u in us:
            for v in vs:
                self.edge(u, v)


def _order(Q: QuasiTreePartition) -> tuple[list[int], list[int]]:
    """Vertices by breadth-first node order then id, and their positions."""
    order = [v for x in Q.tree.bfs_order for v in Q.bags[x]]
    position = [0] * len(order)
    for i, v in enumerate(order):
        position[v] = i
    return order, position


def _assign(colours: list[frozenset[int] | None], comps: _Components, overlay: _Overlay, v: int, chosen: Iterable[int]) -> None:
    chosen = frozenset(chosen)
    colours[v] = chosen
    for c in chosen:
        comps.add(v, c)
        for u in overlay.adj[v]:
            if colours[u] is not None and c in colours[u]:
                comps.union((v, c), (u, c))


def _pick(L: frozenset[int], avoid: set[int], count: int) -> list[int]:
    allowed = sorted(L - avoid)
    if len(allowed) < count:  # the list-size precondition rules this out
        raise AssertionError("avoid-set exhausted a list")
    return allowed[:count]


def _check_valid(G: Graph, Q: QuasiTreePartition, L: ListAssignment):
    report = validate_qtp(G, Q)
    if not report.valid:
        raise InvalidDecomposition("quasi-tree-partition is not valid", violations=report.violations)
    if len(L.lists) != G.n:
        raise BadParams(f"{len(L.lists)} lists for {G.n} vertices")
    return report


def _oldest_touching(comps: _Components, colours, vertices: Iterable[int]) -> int | None:
    best = None
    for u in vertices:
        for c in colours[u]:
            key = comps.age(u, c)
            if best is None or key < best:
                best = key
    return None if best is None else best[1]


def colour_clean_qtp(G: Graph, Q: QuasiTreePartition, L: ListAssignment, ell: int) -> SetColouring:
    """L:ell-colouring from a clean quasi-tree-partition, vertex by vertex.

    Each vertex avoids the colours at the far ends of its up-edges and the
    colour of the oldest monochromatic component it is adjacent to in the
    overlay (G minus up-edges, with B_x + B_parent made a clique).
    """
    report = _check_valid(G, Q, L)
    if not report.clean:
        raise NotClean("colour_clean_qtp needs a clean quasi-tree-partition")
    if ell < 1:
        raise BadParams("ell must be at least 1", ell=ell)
    need = ell * (report.quasiness + 1) + 1
    if L.min_size < need:
        raise ListsTooSmall(f"lists need at least {need} colours", need=need, got=L.min_size)

    overlay = _Overlay(G.n)
    removed = {(min(v, w), max(v, w)) for v, ends in enumerate(Q.up_edges) for w in ends}
    for v, w in G.edges():
        if (v, w) not in removed:
            overlay.edge(v, w)
    tree = Q.tree
    for x in range(tree.size):
        p = tree.parent[x]
        overlay.clique(list(Q.bags[x]) + (list(Q.bags[p]) if p is not None else []))

    order, position = _order(Q)
    comps = _Components(position)
    colours: list[frozenset[int] | None] = [None] * G.n
    for v in order:
        avoid: set[int] = set()
        for w in Q.up_edges[v]:
            avoid |= colours[w]
        coloured = [u for u in overlay.adj[v] if colours[u] is not None]
        oldest = _oldest_touching(comps, colours, coloured)
        if oldest is not None:
            avoid.add(oldest)
        _assign(colours, comps, overlay, v, _pick(L.lists[v], avoid, ell))
    return SetColouring(tuple(colours))


def colour_heavy_qtp(G: Graph, Q: QuasiTreePartition, L: ListAssignment, heavy_cap: int) -> SetColouring:
    """List-colouring (one colour per vertex) from an r-quasi-tree-partition
    with at most ``heavy_cap`` (r+2)-heavy children per node, bag by bag."""
    report = _check_valid(G, Q, L)
    r = report.quasiness
    counts = heavy_children(G, Q, r + 2)
    if max(counts, default=0) > heavy_cap:
        raise HeavyCapViolated(
            f"a node has {max(counts)} ({r + 2})-heavy children, cap is {heavy_cap}",
            observed=max(counts),
            cap=heavy_cap,
        )
    if L.min_size < r + 2:
        raise ListsTooSmall(f"lists need at least {r + 2} colours", need=r + 2, got=L.min_size)

    tree = Q.tree
    depth = tree.depth
    node_of = Q.node_of
    heavy = _heavy_nodes(G, Q, r + 2)
    overlay = _Overlay(G.n)
    for v, w in G.edges():
        overlay.edge(v, w)
    for x in range(tree.size):
        overlay.clique(Q.bags[x])
        if x in heavy:
            overlay.join(Q.bags[x], Q.bags[tree.parent[x]])

    _, position = _order(Q)
    comps = _Components(position)
    colours: list[frozenset[int] | None] = [None] * G.n
    for x in tree.bfs_order:
        p = tree.parent[x]
        bag = Q.bags[x]
        if p is None:
            for v in bag:
                _assign(colours, comps, overlay, v, [min(L.lists[v])])
            continue
        if x in heavy:
            a = _oldest_touching(comps, colours, Q.bags[p])
            for v in bag:
                avoid = {a} if a is not None else set()
                for w in Q.up_edges[v]:
                    avoid |= colours[w]
                _assign(colours, comps, overlay, v, _pick(L.lists[v], avoid, 1))
        else:
            avoid = set()
            for v in bag:
                for w in G.adjacency[v]:
                    if depth[node_of[w]] < depth[x]:
                        avoid |= colours[w]
            for v in bag:
                _assign(colours, comps, overlay, v, _pick(L.lists[v], avoid, 1))
    return SetColouring(tuple(colours))


def _heavy_nodes(G: Graph, Q: QuasiTreePartition, s: int) -> set[int]:
    depth = Q.tree.depth
    node_of = Q.node_of
    out = set()
    for y in range(Q.tree.size):
        if Q.tree.parent[y] is None:
            continue
        seen = {w for v in Q.bags[y] for w in G.adjacency[v] if depth[node_of[w]] < depth[y]}
        if len(seen) >= s:
            out.add(y)
    return out


def colour_fractional_qtp(G: Graph, Q: QuasiTreePartition, L: ListAssignment, ell: int) -> SetColouring:
    """L:ell-colouring from an r-quasi-tree-partition, bag by bag, with
    every tree edge treated as a full join."""
    report = _check_valid(G, Q, L)
    if ell < 1:
        raise BadParams("ell must be at least 1", ell=ell)
    r = report.quasiness
    need = (r + 1) * ell + 1
    if L.min_size < need:
        raise ListsTooSmall(f"lists need at least {need} colours", need=need, got=L.min_size)

    tree = Q.tree
    overlay = _Overlay(G.n)
    for v, w in G.edges():
        overlay.edge(v, w)
    for x in range(tree.size):
        overlay.clique(Q.bags[x])
        p = tree.parent[x]
        if p is not None:
            overlay.join(Q.bags[x], Q.bags[p])

    _, position = _order(Q)
    comps = _Components(position)
    colours: list[frozenset[int] | None] = [None] * G.n
    for x in tree.bfs_order:
        p = tree.parent[x]
        a = None if p is None else _oldest_touching(comps, colours, Q.bags[p])
        for v in Q.bags[x]:
            avoid = {a} if a is not None else set()
            for w in Q.up_edges[v]:
                avoid |= colours[w]
            _assign(colours, comps, overlay, v, _pick(L.lists[v], avoid, ell))
    return SetColouring(tuple(colours))
