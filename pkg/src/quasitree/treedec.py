"""Tree-decompositions: validation, heuristic and exact construction, and
balanced separators extracted from a decomposition."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidDecomposition, TooLarge
from .graph import Graph, VertexSet, vertex_set


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree on nodes ``0..len(bags)-1`` given by ``edges``; one bag per node."""

    bags: tuple[VertexSet, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, bags: Iterable[Iterable[int]], edges: Iterable[Sequence[int]]) -> "TreeDecomposition":
        return cls(
            tuple(vertex_set(b) for b in bags),
            tuple(sorted((min(a, b), max(a, b)) for a, b in edges)),
        )

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for row in adj:
            row.sort()
        return adj


@dataclass
class TreedecReport:
    valid: bool
    width: int
    violations: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class SeparatorSplit:
    """``A``, ``B``, ``Z`` partition V(G); no edge joins ``A`` to ``B``."""

    A: VertexSet
    B: VertexSet
    Z: VertexSet


def _tree_problems(node_count: int, edges: Sequence[tuple[int, int]]) -> list[str]:
    problems = []
    if node_count == 0:
        return ["decomposition has no nodes"]
    for a, b in edges:
        if not (0 <= a < node_count and 0 <= b < node_count) or a == b:
            problems.append(f"tree: bad edge ({a}, {b})")
    if problems:
        return problems
    if len(edges) != node_count - 1:
        problems.append(f"tree: {len(edges)} edges for {node_count} nodes")
    adj: list[list[int]] = [[] for _ in range(node_count)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != node_count:
        problems.append("tree: nodes are not connected")
    return problems


def validate_treedec(G: Graph, D: TreeDecomposition) -> TreedecReport:
    """Check the three defining clauses; report the first failure of each."""
    violations = _tree_problems(len(D.bags), D.edges)
    if violations:
        return TreedecReport(False, D.width, violations)
    holders: list[list[int]] = [[] for _ in range(G.n)]
    for x, bag in enumerate(D.bags):
        for v in bag:
            if not 0 <= v < G.n:
                violations.append(f"bag {x}: vertex {v} out of range")
                return TreedecReport(False, D.width, violations)
            holders[v].append(x)
    missing = [v for v in range(G.n) if not holders[v]]
    if missing:
        violations.append(f"vertex {missing[0]} is in no bag")
    bagsets = [set(b) for b in D.bags]
    for v, w in G.edges():
        if not any(w in bagsets[x] for x in holders[v]):
            violations.append(f"edge ({v}, {w}) is in no bag")
            break
    tadj = D.tree_adjacency()
    for v in range(G.n):
        own = set(holders[v])
        if len(own) <= 1:
            continue
        start = holders[v][0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tadj[x]:
                if y in own and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(own):
            violations.append(f"vertex {v}: bags containing it are not connected")
            break
    return TreedecReport(not violations, D.width, violations)


def elimination_order(G: Graph, strategy: str = "min-degree") -> list[int]:
    if strategy not in ("min-degree", "min-fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    adj = [set(a) for a in G.adjacency]
    alive = set(range(G.n))
    order = []

    def fill(v: int) -> int:
        nb = list(adj[v])
        return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])

    while alive:
        if strategy == "min-degree":
            v = min(alive, key=lambda u: (len(adj[u]), u))
        else:
            v = min(alive, key=lambda u: (fill(u), len(adj[u]), u))
        nb = list(adj[v])
        for i, a in enumerate(nb):
            adj[a].discard(v)
            for b in nb[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
        alive.remove(v)
        order.append(v)
    return order


def treedec_from_order(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition with one bag per vertex: the vertex plus its later
    neighbours in the fill graph of the elimination ``order``."""
    if G.n == 0:
        return TreeDecomposition(((),), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in G.adjacency]
    bags = []
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        bags.append((v, *later))
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
    edges = []
    roots = []
    for i, bag in enumerate(bags):
        later = bag[1:]
        if later:
            edges.append((i, min(pos[w] for w in later)))
        else:
            roots.append(i)
    # Components of the elimination forest are chained into one tree.
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition.make(bags, edges)


def heuristic_treedec(G: Graph, strategy: str = "min-degree") -> TreeDecomposition:
    return treedec_from_order(G, elimination_order(G, strategy))


def treewidth_exact_small(G: Graph) -> int:
    """Exact tree-width by dynamic programming over vertex subsets (n <= 12).

    Uses tw(G) = min over orderings of the max, over v, of the number of
    later vertices reachable from v through earlier ones.
    """
    n = G.n
    if n > 12:
        raise TooLarge(f"exact tree-width limited to n <= 12 (got {n})", n=n)
    if n == 0:
        return -1
    nb = [sum(1 << w for w in G.adjacency[v]) for v in range(n)]
    full = (1 << n) - 1

    def q_size(eliminated: int, v: int) -> int:
        # vertices outside eliminated|{v} reachable from v via eliminated
        seen = 1 << v
        frontier = 1 << v
        reach = 0
        while frontier:
            low = frontier & -frontier
            u = low.bit_length() - 1
            frontier ^= low
            nxt = nb[u] & ~seen
            seen |= nxt
            reach |= nxt & ~eliminated
            frontier |= nxt & eliminated
        return bin(reach).count("1")

    @lru_cache(maxsize=None)
    def best(eliminated: int) -> int:
        if eliminated == full:
            return -1
        result = n
        rest = full & ~eliminated
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            cost = max(q_size(eliminated, v), best(eliminated | low))
            if cost < result:
                result = cost
        return result

    return best(0)


def _restricted_bags(D: TreeDecomposition, W: set[int] | None) -> list[frozenset[int]]:
    if W is None:
        return [frozenset(b) for b in D.bags]
    return [frozenset(v for v in b if v in W) for b in D.bags]


def separate(
    adjacency: Sequence[Sequence[int]],
    W: set[int],
    bags: Sequence[frozenset[int]],
    tadj: Sequence[Sequence[int]],
    S: set[int],
) -> tuple[set[int], set[int], frozenset[int]]:
    """Split ``G[W]`` along one bag of a decomposition of ``G[W]``.

    Picks the smallest node ``x`` whose every branch of ``T - x`` holds at
    most |S|/2 vertices of ``S - B_x``, then packs the components of
    ``G[W] - B_x`` into two sides, largest S-count first, always onto the
    side currently holding fewer S-vertices. Returns ``(A, B, Z)``.
    """
    m = len(bags)
    # root the tree at node 0; top[v] = node nearest the root holding v
    parent = [-1] * m
    order = [0]
    seen = [False] * m
    seen[0] = True
    for x in order:
        for y in tadj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                order.append(y)
    depth = [0] * m
    for x in order[1:]:
        depth[x] = depth[parent[x]] + 1
    top: dict[int, int] = {}
    for x in order:
        for v in bags[x]:
            if v in S and v not in top:
                top[v] = x
    down = [0] * m  # S-vertices whose top node lies in the subtree of x
    for v, x in top.items():
        down[x] += 1
    for x in reversed(order[1:]):
        down[parent[x]] += down[x]
    total = len(S)
    chosen = None
    for x in range(m):
        inside = sum(1 for v in bags[x] if v in S)
        branches = [down[y] for y in tadj[x] if parent[y] == x]
        up = total - inside - sum(branches)
        if all(2 * b <= total for b in branches) and 2 * up <= total:
            chosen = x
            break
    if chosen is None:  # cannot happen for a valid decomposition
        raise InvalidDecomposition("no balanced bag found")
    Z = bags[chosen]
    rest = W - Z
    comps = []
    seen_v: set[int] = set()
    for start in sorted(rest):
        if start in seen_v:
            continue
        seen_v.add(start)
        stack = [start]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adjacency[v]:
                if w in rest and w not in seen_v:
                    seen_v.add(w)
                    stack.append(w)
        comps.append(comp)
    weighted = sorted(
        ((sum(1 for v in c if v in S), min(c), c) for c in comps),
        key=lambda t: (-t[0], t[1]),
    )
    A: set[int] = set()
    B: set[int] = set()
    wa = wb = 0
    for weight, _, comp in weighted:
        if wa <= wb:
            A.update(comp)
            wa += weight
        else:
            B.update(comp)
            wb += weight
    return A, B, Z


def balanced_separator(G: Graph, D: TreeDecomposition, S: Iterable[int]) -> SeparatorSplit:
    """Split G so that each side keeps at most 2|S|/3 of ``S`` outside ``Z``,
    with ``Z`` a single bag of ``D``."""
    report = validate_treedec(G, D)
    if not report.valid:
        raise InvalidDecomposition("decomposition is not valid for G", violations=report.violations)
    A, B, Z = separate(G.adjacency, set(range(G.n)), _restricted_bags(D, None), D.tree_adjacency(), set(S))
    return SeparatorSplit(vertex_set(A), vertex_set(B), vertex_set(Z))


def restrict(D: TreeDecomposition, W: Iterable[int]) -> TreeDecomposition:
    """Restriction of ``D`` to ``W`` (same tree; bags intersected with ``W``)."""
    W = set(W)
    return TreeDecomposition(tuple(tuple(v for v in b if v in W) for b in D.bags), D.edges)
