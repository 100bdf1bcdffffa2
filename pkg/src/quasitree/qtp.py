"""Quasi-tree-partitions and their certification.

A k-quasi-T-partition is a partition of V(G) into bags indexed by a rooted
tree, together with, for every vertex v, a set E_v of at most k incident
"up-edges". Every edge outside the union of the E_v joins equal or adjacent
bags, and every up-edge of v lands in a bag strictly shallower than v's.
Every quantity in :class:`QtpReport` is recomputed here from the raw
partition; nothing reported by a builder is trusted.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import NotClean
from .graph import Graph, VertexSet, common_neighbours, vertex_set
from .treedec import TreeDecomposition


@dataclass(frozen=True)
class RootedTree:
    """``parent[x]`` is the parent of node ``x``; ``None`` marks the root."""

    parent: tuple[int | None, ...]

    @cached_property
    def root(self) -> int:
        roots = [x for x, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        return roots[0]

    @property
    def size(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for x, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(x)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        depth = [-1] * self.size
        for x in self.bfs_order:
            p = self.parent[x]
            depth[x] = 0 if p is None else depth[p] + 1
        return tuple(depth)

    @cached_property
    def bfs_order(self) -> tuple[int, ...]:
        """Breadth-first order from the root; siblings by node id."""
        order = [self.root]
        for x in order:
            order.extend(self.children[x])
        return tuple(order)

    def degree(self, x: int) -> int:
        return len(self.children[x]) + (self.parent[x] is not None)

    @property
    def max_degree(self) -> int:
        return max((self.degree(x) for x in range(self.size)), default=0)

    def ancestors(self, x: int) -> list[int]:
        """Proper ancestors of ``x``, nearest first."""
        out = []
        p = self.parent[x]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def is_ancestor(self, a: int, x: int) -> bool:
        """True if ``a`` is a proper ancestor of ``x``."""
        p = self.parent[x]
        while p is not None:
            if p == a:
                return True
            p = self.parent[p]
        return False

    def problems(self) -> list[str]:
        out = []
        n = self.size
        if n == 0:
            return ["tree has no nodes"]
        roots = [x for x, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            out.append(f"tree: {len(roots)} roots")
        for x, p in enumerate(self.parent):
            if p is not None and not 0 <= p < n:
                out.append(f"tree: node {x} has out-of-range parent {p}")
        if out:
            return out
        for x in range(n):
            seen = {x}
            p = self.parent[x]
            while p is not None:
                if p in seen:
                    return [f"tree: cycle through node {x}"]
                seen.add(p)
                p = self.parent[p]
        return []


@dataclass(frozen=True)
class QuasiTreePartition:
    """``bags[x]`` is B_x; ``up_edges[v]`` lists the far ends of E_v."""

    tree: RootedTree
    bags: tuple[VertexSet, ...]
    up_edges: tuple[VertexSet, ...]

    @classmethod
    def make(
        cls,
        parent: Sequence[int | None],
        bags: Iterable[Iterable[int]],
        up_edges: Iterable[Iterable[int]],
    ) -> "QuasiTreePartition":
        return cls(
            RootedTree(tuple(parent)),
            tuple(vertex_set(b) for b in bags),
            tuple(vertex_set(e) for e in up_edges),
        )

    @cached_property
    def node_of(self) -> dict[int, int]:
        return {v: x for x, bag in enumerate(self.bags) for v in bag}

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    @property
    def quasiness(self) -> int:
        return max((len(e) for e in self.up_edges), default=0)


@dataclass
class QtpReport:
    valid: bool
    quasiness: int
    width: int
    degree: int
    clean: bool
    heavy_children: list[int]
    violations: list[str] = field(default_factory=list)

    @property
    def max_heavy_children(self) -> int:
        return max(self.heavy_children, default=0)


def heavy_children(G: Graph, Q: QuasiTreePartition, s: int) -> list[int]:
    """Per node, the number of children y with at least ``s`` vertices of
    strictly shallower bags adjacent to B_y."""
    tree = Q.tree
    depth = tree.depth
    node_of = Q.node_of
    counts = [0] * tree.size
    for y in range(tree.size):
        p = tree.parent[y]
        if p is None:
            continue
        seen = set()
        for v in Q.bags[y]:
            for w in G.adjacency[v]:
                x = node_of.get(w)
                if x is not None and depth[x] < depth[y]:
                    seen.add(w)
        if len(seen) >= s:
            counts[p] += 1
    return counts


def validate_qtp(G: Graph, Q: QuasiTreePartition, s_heavy: int = 1) -> QtpReport:
    violations = Q.tree.problems()
    width = Q.width
    quasiness = Q.quasiness
    if violations:
        return QtpReport(False, quasiness, width, 0, False, [], violations)
    tree = Q.tree
    if len(Q.bags) != tree.size:
        violations.append(f"{len(Q.bags)} bags for {tree.size} tree nodes")
    if len(Q.up_edges) != G.n:
        violations.append(f"{len(Q.up_edges)} up-edge lists for {G.n} vertices")
    node_of: dict[int, int] = {}
    for x, bag in enumerate(Q.bags):
        for v in bag:
            if not 0 <= v < G.n:
                violations.append(f"bag {x}: vertex {v} out of range")
            elif v in node_of:
                violations.append(f"vertex {v} in bags {node_of[v]} and {x}")
            else:
                node_of[v] = x
    uncovered = [v for v in range(G.n) if v not in node_of]
    if uncovered:
        violations.append(f"vertex {uncovered[0]} is in no bag")
    if violations:
        return QtpReport(False, quasiness, width, tree.max_degree, False, [], violations)

    depth = tree.depth
    clean = True
    removed: set[tuple[int, int]] = set()
    for v, ends in enumerate(Q.up_edges):
        x = node_of[v]
        for w in ends:
            if not (0 <= w < G.n and G.has_edge(v, w)):
                violations.append(f"E_{v}: ({v}, {w}) is not an edge of G")
                continue
            removed.add((min(v, w), max(v, w)))
            y = node_of[w]
            if depth[y] >= depth[x]:
                violations.append(
                    f"E_{v}: edge to {w} lands in node {y}, not shallower than node {x}"
                )
                clean = False
            elif y == tree.parent[x] or not tree.is_ancestor(y, x):
                clean = False
    for v, w in G.edges():
        if (v, w) in removed:
            continue
        x, y = node_of[v], node_of[w]
        if x != y and tree.parent[x] != y and tree.parent[y] != x:
            violations.append(f"edge ({v}, {w}) joins non-adjacent nodes {x} and {y}")
    heavy = heavy_children(G, Q, s_heavy)
    return QtpReport(
        valid=not violations,
        quasiness=quasiness,
        width=width,
        degree=tree.max_degree,
        clean=clean and not violations,
        heavy_children=heavy,
        violations=violations,
    )


def _require_clean(G: Graph, Q: QuasiTreePartition) -> None:
    report = validate_qtp(G, Q)
    if not report.valid:
        raise NotClean("partition is not valid", violations=report.violations)
    if not report.clean:
        raise NotClean("loads are defined only for clean quasi-tree-partitions")


def loads_and_weight(G: Graph, Q: QuasiTreePartition) -> tuple[list[VertexSet], int]:
    """Load C_x of every node and the weight max |C_x|.

    C_x collects far ends w of up-edges vw whose near end v sits at x or
    below x, and whose far end sits in a non-parent ancestor of x.
    """
    _require_clean(G, Q)
    tree = Q.tree
    node_of = Q.node_of
    loads = []
    for x in range(tree.size):
        jumped = set(tree.ancestors(x)[1:])
        load = set()
        for v, ends in enumerate(Q.up_edges):
            y = node_of[v]
            if y != x and not tree.is_ancestor(x, y):
                continue
            for w in ends:
                if node_of[w] in jumped:
                    load.add(w)
        loads.append(vertex_set(load))
    return loads, max((len(c) for c in loads), default=0)


def to_treedec(G: Graph, Q: QuasiTreePartition) -> TreeDecomposition:
    """Tree-decomposition with bags B_x + B_parent(x) + C_x on the same tree."""
    loads, _ = loads_and_weight(G, Q)
    tree = Q.tree
    bags = []
    edges = []
    for x in range(tree.size):
        p = tree.parent[x]
        if p is None:
            bags.append(Q.bags[x])
        else:
            bags.append(set(Q.bags[x]) | set(Q.bags[p]) | set(loads[x]))
            edges.append((x, p))
    return TreeDecomposition.make(bags, edges)


@dataclass
class VerticalPathReport:
    tested: int
    skipped: int
    exhaustive: bool
    failures: list[VertexSet] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def on_vertical_path(Q: QuasiTreePartition, X: Iterable[int]) -> bool:
    """Whether the nodes whose bags meet ``X`` lie on one vertical path."""
    node_of = Q.node_of
    nodes = {node_of[v] for v in X}
    if len(nodes) <= 1:
        return True
    tree = Q.tree
    deepest = max(nodes, key=lambda x: tree.depth[x])
    chain = set(tree.ancestors(deepest)) | {deepest}
    return nodes <= chain


def vertical_path_check(
    G: Graph,
    Q: QuasiTreePartition,
    threshold: int,
    policy: str = "auto",
    max_size: int = 3,
    samples: int = 1000,
    seed: int = 0,
) -> VerticalPathReport:
    """Test every (or a sample of) X with at least ``threshold`` common
    neighbours for the vertical-path property."""
    exhaustive = policy == "exhaustive" or (policy == "auto" and G.n <= 14)
    if exhaustive:
        candidates: Iterable[tuple[int, ...]] = itertools.chain.from_iterable(
            itertools.combinations(range(G.n), r) for r in range(1, max_size + 1)
        )
    else:
        rng = random.Random(seed)
        sizes = [r for r in range(1, max_size + 1) if r <= G.n]
        candidates = (
            tuple(sorted(rng.sample(range(G.n), rng.choice(sizes)))) for _ in range(samples if sizes else 0)
        )
    report = VerticalPathReport(0, 0, exhaustive)
    for X in candidates:
        if len(common_neighbours(G, X)) < threshold:
            report.skipped += 1
            continue
        report.tested += 1
        if not on_vertical_path(Q, X):
            report.failures.append(X)
    return report
