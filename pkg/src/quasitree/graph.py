"""Simple undirected graphs over dense vertex ids ``0..n-1``."""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence
from functools import cached_property

from .errors import SelfLoop, VertexOutOfRange

VertexSet = tuple[int, ...]


class Graph:
    """Immutable simple graph.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``. Build
    instances with :func:`build_graph` rather than calling the constructor.
    """

    __slots__ = ("n", "adjacency", "__dict__")

    def __init__(self, n: int, adjacency: tuple[tuple[int, ...], ...]) -> None:
        self.n = n
        self.adjacency = adjacency

    @cached_property
    def nbrs(self) -> tuple[frozenset[int], ...]:
        """Neighbourhoods as frozensets, for O(1) membership tests."""
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.n) for w in self.adjacency[v] if v < w]

    def has_edge(self, v: int, w: int) -> bool:
        return w in self.nbrs[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices; duplicate edges are merged."""
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}", n=n)
    sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}", edge=[u, v])
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", vertex=u)
        sets[u].add(v)
        sets[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in sets))


def vertex_set(members: Iterable[int]) -> VertexSet:
    return tuple(sorted(set(members)))


def _check_ids(G: Graph, W: Iterable[int]) -> None:
    for v in W:
        if not 0 <= v < G.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{G.n - 1}", vertex=v)


def induced_subgraph(G: Graph, W: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[W]`` relabelled to ``0..|W|-1`` and the old-to-new id map."""
    members = vertex_set(W)
    _check_ids(G, members)
    index = {v: i for i, v in enumerate(members)}
    adjacency = tuple(
        tuple(index[w] for w in G.adjacency[v] if w in index) for v in members
    )
    return Graph(len(members), adjacency), index


def components(G: Graph, within: Iterable[int] | None = None) -> list[VertexSet]:
    """Connected components of ``G`` (or of ``G[within]``), each sorted.

    Blocks are ordered by their smallest vertex.
    """
    alive = set(range(G.n)) if within is None else set(within)
    seen: set[int] = set()
    blocks = []
    for start in sorted(alive):
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        block = []
        while stack:
            v = stack.pop()
            block.append(v)
            for w in G.adjacency[v]:
                if w in alive and w not in seen:
                    seen.add(w)
                    stack.append(w)
        blocks.append(tuple(sorted(block)))
    return blocks


def neighbours_at_least(G: Graph, X: Iterable[int], s: int) -> VertexSet:
    """Vertices outside ``X`` with at least ``s`` neighbours in ``X``."""
    if s < 1:
        raise ValueError("threshold s must be at least 1")
    X = set(X)
    _check_ids(G, X)
    counts: dict[int, int] = {}
    for x in X:
        for w in G.adjacency[x]:
            if w not in X:
                counts[w] = counts.get(w, 0) + 1
    return tuple(sorted(w for w, c in counts.items() if c >= s))


def common_neighbours(G: Graph, X: Iterable[int]) -> VertexSet:
    X = tuple(X)
    if not X:
        return tuple(range(G.n))
    return neighbours_at_least(G, X, len(set(X)))


def degeneracy_order(G: Graph) -> tuple[int, list[int]]:
    """Repeatedly delete a minimum-degree vertex (smallest id on ties).

    Returns the degeneracy and the deletion order.
    """
    deg = [len(a) for a in G.adjacency]
    heap = [(deg[v], v) for v in range(G.n)]
    heapq.heapify(heap)
    removed = [False] * G.n
    order = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, dv)
        for w in G.adjacency[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, order
