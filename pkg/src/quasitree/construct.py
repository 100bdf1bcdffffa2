"""Constructive builders for quasi-tree-partitions.

Every recursive builder is written as a generator that yields the
sub-problems it needs solved and receives their partial partitions back.
:func:`_drive` runs such generators on an explicit stack, so recursion depth
is bounded by memory rather than by the interpreter's call stack.
"""

from __future__ import annotations

import itertools
from collections.abc import Generator, Iterable
from dataclasses import dataclass, field

from .errors import BadParams, InvalidDecomposition, PatternPresent, PreconditionViolation
from .graph import Graph, VertexSet, components, degeneracy_order, induced_subgraph, vertex_set
from .patterns import c_bound, extension_or_skewer, find_kst
from .patterns.search import DEFAULT_CAP
from .qtp import QuasiTreePartition
from .treedec import TreeDecomposition, _restricted_bags, separate, validate_treedec


@dataclass(frozen=True)
class BuildParams:
    """Parameters shared by the builders.

    ``k`` bounds the decomposition: the supplied D must have width at most
    ``k - 1``. ``t`` is used by :func:`build_qtp_kst_free` only; the
    excluded-pattern builders derive their own ``t`` from ``a``, ``b`` (and
    ``k`` for the clean variant).
    """

    s: int
    k: int
    rho: int
    t: int | None = None
    a: int | None = None
    b: int | None = None
    S: VertexSet = ()
    cap: int = DEFAULT_CAP

    @property
    def c(self) -> int:
        if self.t is None:
            raise BadParams("t is required to compute c")
        return c_bound(self.s, self.t, self.rho)

    def with_t(self, t: int) -> "BuildParams":
        return BuildParams(self.s, self.k, self.rho, t, self.a, self.b, self.S, self.cap)


def excluded_t(s: int, a: int, b: int, k: int | None = None) -> int:
    """The t used by the excluded-pattern builders; pass ``k`` for the clean
    variant, omit it for the k-independent one."""
    m = (a - 1) * (b - 1)
    return (s + m) * m + (k if k is not None else 0) + 1


@dataclass
class _Part:
    """Mutable partial partition over a subset of V(G); node ids are global
    to one build and never reused."""

    root: int
    parent: dict[int, int | None] = field(default_factory=dict)
    kids: dict[int, list[int]] = field(default_factory=dict)
    bags: dict[int, set[int]] = field(default_factory=dict)
    up: dict[int, frozenset[int]] = field(default_factory=dict)

    def add(self, node: int, parent: int | None, bag: Iterable[int]) -> None:
        self.parent[node] = parent
        self.kids[node] = []
        self.bags[node] = set(bag)
        if parent is not None:
            self.kids[parent].append(node)

    def absorb(self, other: "_Part") -> None:
        self.parent.update(other.parent)
        self.bags.update(other.bags)
        self.up.update(other.up)
        for x, ks in other.kids.items():
            self.kids.setdefault(x, []).extend(ks)

    def depth(self, x: int) -> int:
        d = 0
        while self.parent[x] is not None:
            x = self.parent[x]
            d += 1
        return d

    def finish(self, n: int) -> QuasiTreePartition:
        order = [self.root]
        for x in order:
            order.extend(sorted(self.kids[x]))
        label = {x: i for i, x in enumerate(order)}
        parent = [None if self.parent[x] is None else label[self.parent[x]] for x in order]
        bags = [self.bags[x] for x in order]
        up = [sorted(self.up.get(v, ())) for v in range(n)]
        return QuasiTreePartition.make(parent, bags, up)


Step = Generator[object, "_Part", "_Part"]


def _drive(top: Step) -> _Part:
    """Run a generator tree to completion without Python-level recursion."""
    stack = [top]
    value = None
    while True:
        try:
            request = stack[-1].send(value)
        except StopIteration as done:
            stack.pop()
            if not stack:
                return done.value
            value = done.value
            continue
        stack.append(request)
        value = None


class _Context:
    """Shared state of one build: the graph, the decomposition and a node
    counter."""

    def __init__(self, G: Graph, D: TreeDecomposition, s: int, k: int, c: int) -> None:
        self.G = G
        self.D = D
        self.tadj = D.tree_adjacency()
        self.s = s
        self.k = k
        self.c = c
        self._ids = itertools.count()

    def node(self) -> int:
        return next(self._ids)

    def marked(self, W: set[int], X: Iterable[int], at_least: int) -> set[int]:
        """N^{>=at_least}(X) inside G[W]."""
        X = set(X)
        counts: dict[int, int] = {}
        for x in X:
            for w in self.G.adjacency[x]:
                if w in W and w not in X:
                    counts[w] = counts.get(w, 0) + 1
        return {w for w, c in counts.items() if c >= at_least}

    # K*-free builder: padding wrapper and separator recursion

    def kst_free(self, W: set[int], S: set[int]) -> Step:
        k = self.k
        if len(W) < 4 * k:
            part = _Part(self.node())
            part.add(part.root, None, W)
            for v in W:
                part.up[v] = frozenset()
            return part
        S = set(S)
        if len(S) < 4 * k:
            S.update(sorted(W - S)[: 4 * k - len(S)])
        return (yield self.heart(W, S))

    def heart(self, W: set[int], S: set[int]) -> Step:
        k, c = self.k, self.c
        rest = W - S
        if len(rest) <= 18 * c * k:
            part = _Part(self.node())
            part.add(part.root, None, S)
            if rest:
                part.add(self.node(), part.root, rest)
            for v in W:
                part.up[v] = frozenset()
            return part

        if len(S) <= 12 * k - 1:
            u = min(rest)
            X = S | {u}
            grown = X | self.marked(W, X, self.s)
            if len(grown) > 12 * c * k:
                raise PreconditionViolation(
                    f"|N^>={self.s}(X)| = {len(grown) - len(X)} exceeds (c-1)|X| = {(c - 1) * len(X)}; "
                    "the graph is not K*_{s,t}-free or rho is too small",
                    X=sorted(X),
                    neighbours=len(grown) - len(X),
                    bound=(c - 1) * len(X),
                )
            sub = yield self.heart(W, grown)
            old = sub.root
            part = _Part(self.node())
            part.add(part.root, None, S)
            part.absorb(sub)
            part.parent[old] = part.root
            part.kids[part.root].append(old)
            part.bags[old] -= S
            for v in S:
                part.up[v] = frozenset()
            nbrs = self.G.nbrs
            for x in part.kids[old]:
                for v in part.bags[x]:
                    part.up[v] = nbrs[v] & S
            return part

        bags = _restricted_bags(self.D, W)
        A, B, Z = separate(self.G.adjacency, W, bags, self.tadj, S)
        if len(Z) > k:
            raise InvalidDecomposition(f"separator of size {len(Z)} exceeds k = {k}")
        W1, W2 = A | Z, B | Z
        first = yield self.heart(W1, (S & W1) | Z)
        second = yield self.heart(W2, (S & W2) | Z)
        first.bags[first.root] |= second.bags.pop(second.root)
        for x in second.kids.pop(second.root):
            second.parent[x] = first.root
            first.kids[first.root].append(x)
        del second.parent[second.root]
        first.absorb(second)
        return first

    # excluded-pattern builders: peel a K_{s,t} or report the pattern

    def excluded(self, W: set[int], S: set[int], a: int, b: int, t: int, clean: bool, cap: int) -> Step:
        G, s = self.G, self.s
        H, index = induced_subgraph(G, W)
        back = sorted(W)
        hit = find_kst(H, s, t, cap)
        if hit is None:
            return (yield self.kst_free(W, S))
        X = {back[i] for i in hit.X}
        marked = self.marked(W, X, s)
        limit = (a - 1) * (b - 1)
        comps = components(G, W - X)
        if any(sum(1 for v in comp if v in marked) > limit for comp in comps):
            w = extension_or_skewer(H, hit.X, a, b)
            if w is None:  # guaranteed not to happen above the threshold
                raise AssertionError("dichotomy search failed above its threshold")
            w = type(w)(
                w.kind,
                tuple(back[i] for i in w.X),
                tuple(back[i] for i in w.Y),
                tuple((back[p], back[q], back[m]) for p, q, m in w.pairs),
                tuple(back[i] for i in w.hub),
                tuple(back[i] for i in w.path),
            )
            raise PatternPresent(
                f"found a {w.kind} pattern on X = {list(w.X)}", witness=w.to_dict()
            )
        C = next((set(comp) for comp in comps if not S & set(comp)), None)
        if C is None:
            raise PreconditionViolation(
                "every component of G - X meets S; |S| exceeds s+(a-1)(b-1)", X=sorted(X)
            )

        first = yield self.excluded(W - C, S, a, b, t, clean, cap)
        second = yield self.excluded(C | X, X | (marked & C), a, b, t, clean, cap)

        meets = [x for x in first.bags if first.bags[x] & X]
        depth = {x: first.depth(x) for x in meets}
        star = min(meets, key=lambda x: (-depth[x], x))
        if clean:
            line = set()
            y = star
            while y is not None:
                line.add(y)
                y = first.parent[y]
            if not set(meets) <= line:
                raise AssertionError("bags meeting X do not lie on a vertical path")

        z2 = second.root
        nbrs = G.nbrs
        frozen_x = frozenset(X)
        for x in second.kids[z2]:
            for v in second.bags[x]:
                second.up[v] = nbrs[v] & frozen_x
        second.bags[z2] -= X
        beyond = frozen_x - first.bags[star]
        for v in second.bags[z2]:
            second.up[v] = nbrs[v] & beyond
        for v in X:
            second.up.pop(v, None)
        second.parent[z2] = star
        first.absorb(second)
        first.kids[star].append(z2)
        return first


def _check_decomposition(G: Graph, D: TreeDecomposition, k: int) -> None:
    report = validate_treedec(G, D)
    if not report.valid:
        raise InvalidDecomposition("decomposition is not valid for G", violations=report.violations)
    if report.width > k - 1:
        raise InvalidDecomposition(
            f"decomposition width {report.width} exceeds k - 1 = {k - 1}", width=report.width, k=k
        )


def _check_common(G: Graph, P: BuildParams) -> set[int]:
    if P.s < 1 or P.k < 1 or P.rho < 1:
        raise BadParams("s, k and rho must be at least 1", s=P.s, k=P.k, rho=P.rho)
    S = set(P.S)
    bad = [v for v in S if not 0 <= v < G.n]
    if bad:
        raise BadParams(f"S contains vertices outside 0..{G.n - 1}", vertices=sorted(bad))
    return S


def build_qtp_kst_free(G: Graph, D: TreeDecomposition, P: BuildParams) -> QuasiTreePartition:
    """Clean (s-1)-quasi-tree-partition of a K*_{s,t}-free graph with
    rho(G) <= rho and tree-width < k, with S inside the root bag.

    Raises :class:`PreconditionViolation` carrying a set X with too many
    s-fold neighbours whenever the K*/rho assumption is refuted.
    """
    S = _check_common(G, P)
    if P.t is None or P.t < 1:
        raise BadParams("t must be at least 1", t=P.t)
    c = P.c
    if len(S) > 12 * c * P.k:
        raise BadParams(f"|S| = {len(S)} exceeds 12ck = {12 * c * P.k}", size=len(S))
    _check_decomposition(G, D, P.k)
    ctx = _Context(G, D, P.s, P.k, c)
    return _drive(ctx.kst_free(set(range(G.n)), S)).finish(G.n)


def _build_excluded(G: Graph, D: TreeDecomposition, P: BuildParams, clean: bool) -> QuasiTreePartition:
    S = _check_common(G, P)
    if P.a is None or P.b is None or P.a < 2 or P.b < 2:
        raise BadParams("a and b must be at least 2", a=P.a, b=P.b)
    if len(S) > P.s + (P.a - 1) * (P.b - 1):
        raise BadParams(
            f"|S| = {len(S)} exceeds s+(a-1)(b-1) = {P.s + (P.a - 1) * (P.b - 1)}", size=len(S)
        )
    t = excluded_t(P.s, P.a, P.b, P.k if clean else None)
    c = c_bound(P.s, t, P.rho)
    _check_decomposition(G, D, P.k)
    ctx = _Context(G, D, P.s, P.k, c)
    top = ctx.excluded(set(range(G.n)), S, P.a, P.b, t, clean, P.cap)
    return _drive(top).finish(G.n)


def build_qtp_excluded_clean(G: Graph, D: TreeDecomposition, P: BuildParams) -> QuasiTreePartition:
    """Clean (s-1)-quasi-tree-partition of a graph with no 1-extension of
    K_{s,a} and no skewered K_{s,b}, where every node has few (s+1)-heavy
    children.

    Raises :class:`PatternPresent` with a checkable witness when one of the
    excluded patterns is found instead.
    """
    return _build_excluded(G, D, P, clean=True)


def build_qtp_excluded(G: Graph, D: TreeDecomposition, P: BuildParams) -> QuasiTreePartition:
    """Like :func:`build_qtp_excluded_clean` but with the k-independent t and
    without the cleanness guarantee."""
    return _build_excluded(G, D, P, clean=False)


def build_qtp_degeneracy(G: Graph) -> QuasiTreePartition:
    """Width-1 quasi-tree-partition with quasiness degeneracy(G) - 1.

    Vertices are re-inserted in reverse deletion order; each becomes a child
    of the deepest node holding one of its placed neighbours, and its other
    placed neighbours become its up-edges.
    """
    if G.n == 0:
        raise BadParams("the empty graph has no quasi-tree-partition")
    _, order = degeneracy_order(G)
    order.reverse()
    node_of: dict[int, int] = {}
    parent: list[int | None] = []
    depth: list[int] = []
    up: list[list[int]] = [[] for _ in range(G.n)]
    for v in order:
        placed = [w for w in G.adjacency[v] if w in node_of]
        if not parent:
            attach = None
        elif placed:
            anchor = min(placed, key=lambda w: (-depth[node_of[w]], node_of[w]))
            attach = node_of[anchor]
            up[v] = [w for w in placed if w != anchor]
        else:
            attach = 0
        node_of[v] = len(parent)
        parent.append(attach)
        depth.append(0 if attach is None else depth[attach] + 1)
    bags = [[v] for v in order]
    # relabel in breadth-first order so node ids match the other builders
    kids: list[list[int]] = [[] for _ in parent]
    for x, p in enumerate(parent):
        if p is not None:
            kids[p].append(x)
    bfs = [0]
    for x in bfs:
        bfs.extend(kids[x])
    label = {x: i for i, x in enumerate(bfs)}
    return QuasiTreePartition.make(
        [None if parent[x] is None else label[parent[x]] for x in bfs],
        [bags[x] for x in bfs],
        up,
    )
