from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasitree import generators as gen
from quasitree.colouring import (
    ListAssignment,
    SetColouring,
    clean_bound,
    colour_clean_qtp,
    colour_fractional_qtp,
    colour_heavy_qtp,
    fractional_bound,
    heavy_bound,
    validate_colouring,
)
from quasitree.construct import BuildParams, build_qtp_degeneracy, build_qtp_excluded, build_qtp_kst_free, excluded_t
from quasitree.errors import HeavyCapViolated, ListsTooSmall, NotClean
from quasitree.graph import build_graph
from quasitree.qtp import QuasiTreePartition, heavy_children, validate_qtp
from quasitree.treedec import heuristic_treedec
from test_graph import graphs


def rank_bound(w: int, d: int, ell: int) -> int:
    """w * sum_{i < ell*w} d^i: the count the component-rank argument gives
    for the bag-by-bag fractional colouring."""
    return w * sum(d**i for i in range(ell * w))


def path_partition(n: int) -> QuasiTreePartition:
    return QuasiTreePartition.make([None] + list(range(n - 1)), [[v] for v in range(n)], [[]] * n)


def brute_components(G, f):
    """Clustering by union-find over monochromatic edges (second code path)."""
    best = 1 if G.n else 0
    colours = set().union(*f.colours) if G.n else set()
    for c in colours:
        parent = {v: v for v in range(G.n) if c in f.colours[v]}

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v

        for u, v in G.edges():
            if u in parent and v in parent:
                parent[find(u)] = find(v)
        sizes: dict[int, int] = {}
        for v in parent:
            sizes[find(v)] = sizes.get(find(v), 0) + 1
        best = max(best, max(sizes.values(), default=0))
    return best


def test_validator_examples():
    C6 = gen.cycle(6)
    r = validate_colouring(C6, SetColouring.make([[v % 2] for v in range(6)]))
    assert r.proper and r.clustering == 1 and r.defect == 0
    r = validate_colouring(gen.path(3), SetColouring.make([[0]] * 3))
    assert not r.proper and r.clustering == 3 and r.defect == 2
    r = validate_colouring(gen.complete(3), SetColouring.make([[1, 2], [2, 3], [1, 3]]))
    assert r.clustering == 2 and r.defect == 1


def test_validator_list_compliance():
    f = SetColouring.make([[1], [2]])
    G = gen.path(2)
    assert validate_colouring(G, f, ListAssignment.make([[1, 5], [2]])).list_ok
    assert not validate_colouring(G, f, ListAssignment.make([[1], [3]])).list_ok


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=12), st.data())
def test_validator_against_union_find(G, data):
    q = data.draw(st.integers(1, 2))
    f = SetColouring.make(
        [data.draw(st.sets(st.integers(0, 3), min_size=q, max_size=q)) for _ in range(G.n)]
    )
    assert validate_colouring(G, f).clustering == brute_components(G, f)


def test_clean_on_path():
    n = 12
    G = gen.path(n)
    Q = path_partition(n)
    L = ListAssignment.uniform(n, [1, 2])
    f = colour_clean_qtp(G, Q, L, 1)
    r = validate_colouring(G, f, L)
    assert r.list_ok and r.clustering <= clean_bound(1, 1, 2)


def test_clean_edgeless():
    G = build_graph(5, [])
    Q = QuasiTreePartition.make([None], [list(range(5))], [[]] * 5)
    f = colour_clean_qtp(G, Q, ListAssignment.uniform(5, [7, 8]), 1)
    assert validate_colouring(G, f).clustering == 1


def test_clean_on_built_c6():
    G = gen.cycle(6)
    D = heuristic_treedec(G)
    Q = build_qtp_kst_free(G, D, BuildParams(s=2, k=3, rho=2, t=2))
    rep = validate_qtp(G, Q)
    L = ListAssignment.random(6, 5, 8, seed=1)
    f = colour_clean_qtp(G, Q, L, 2)
    r = validate_colouring(G, f, L)
    assert f.q == 2 and r.list_ok
    assert r.clustering <= clean_bound(2, rep.width, rep.degree)


def test_clean_requires_clean_and_large_lists():
    G = build_graph(4, [(0, 1), (1, 2), (0, 3), (2, 3)])
    Q = QuasiTreePartition.make([None, 0, 1, 0], [[0], [1], [2], [3]], [[], [], [3], []])
    with pytest.raises(NotClean):
        colour_clean_qtp(G, Q, ListAssignment.uniform(4, range(9)), 1)
    with pytest.raises(ListsTooSmall):
        colour_clean_qtp(gen.path(5), path_partition(5), ListAssignment.uniform(5, [0]), 1)


def test_clean_monochromatic_edges_follow_tree():
    rng = random.Random(3)
    for _ in range(20):
        G = gen.random_partial_ktree(rng.randint(5, 40), rng.randint(1, 3), rng.randint(0, 999))
        Q = build_qtp_degeneracy(G)
        rep = validate_qtp(G, Q)
        if not rep.clean:
            continue
        ell = rng.randint(1, 2)
        need = ell * (rep.quasiness + 1) + 1
        L = ListAssignment.random(G.n, need, 2 * need, rng.randint(0, 999))
        f = colour_clean_qtp(G, Q, L, ell)
        for u, v in G.edges():
            if f.colours[u] & f.colours[v]:
                x, y = Q.node_of[u], Q.node_of[v]
                assert x == y or Q.tree.parent[x] == y or Q.tree.parent[y] == x


def test_heavy_single_bag():
    G = gen.complete(4)
    Q = QuasiTreePartition.make([None], [[0, 1, 2, 3]], [[]] * 4)
    f = colour_heavy_qtp(G, Q, ListAssignment.uniform(4, [5, 6]), 0)
    assert validate_colouring(G, f).clustering <= 4


def test_heavy_on_excluded_output():
    for seed in range(5):
        G = gen.random_tree(60, seed)
        D = heuristic_treedec(G)
        k = D.width + 1
        Q = build_qtp_excluded(G, D, BuildParams(s=1, k=k, rho=max(1, D.width), a=2, b=2))
        rep = validate_qtp(G, Q)
        assert rep.quasiness == 0
        cap = max(heavy_children(G, Q, 2))
        L = ListAssignment.random(G.n, 2, 4, seed)
        f = colour_heavy_qtp(G, Q, L, cap)
        r = validate_colouring(G, f, L)
        assert r.list_ok and r.clustering <= heavy_bound(rep.width, cap)


def test_heavy_closure_needs_two_colours():
    G = gen.closure_tree(2, 5)
    Q = build_qtp_degeneracy(G)
    rep = validate_qtp(G, Q)
    cap = max(heavy_children(G, Q, rep.quasiness + 2), default=0)
    f = colour_heavy_qtp(G, Q, ListAssignment.uniform(G.n, [0, 1]), cap)
    assert validate_colouring(G, f).clustering <= heavy_bound(rep.width, cap)
    with pytest.raises(ListsTooSmall):
        colour_heavy_qtp(G, Q, ListAssignment.uniform(G.n, [0]), cap)


def test_heavy_cap_enforced():
    # K_{2,6} with {0, 1} at the root and one leaf per child: six 2-heavy children
    G = gen.kst(2, 6)
    Q = QuasiTreePartition.make([None] + [0] * 6, [[0, 1]] + [[v] for v in range(2, 8)], [[]] * 8)
    assert heavy_children(G, Q, 2)[0] == 6
    with pytest.raises(HeavyCapViolated):
        colour_heavy_qtp(G, Q, ListAssignment.uniform(8, [0, 1]), 5)
    f = colour_heavy_qtp(G, Q, ListAssignment.uniform(8, [0, 1]), 6)
    assert validate_colouring(G, f).clustering <= heavy_bound(2, 6)


def test_fractional_tree_partition():
    G = gen.grid(5)
    D = heuristic_treedec(G)
    Q = build_qtp_kst_free(G, D, BuildParams(s=1, k=D.width + 1, rho=D.width, t=5))
    rep = validate_qtp(G, Q)
    f = colour_fractional_qtp(G, Q, ListAssignment.random(G.n, 2, 4, 0), 1)
    assert validate_colouring(G, f).clustering <= max(1, rank_bound(rep.width, rep.degree, 1))


def test_fractional_edgeless():
    G = build_graph(4, [])
    f = colour_fractional_qtp(G, path_partition(4), ListAssignment.uniform(4, [0, 1]), 1)
    assert validate_colouring(G, f).clustering == 1


def test_fractional_grid_three_sets():
    G = gen.grid(5)
    Q = build_qtp_degeneracy(G)
    rep = validate_qtp(G, Q)
    assert rep.quasiness == 1
    L = ListAssignment.random(G.n, 7, 10, seed=2)
    f = colour_fractional_qtp(G, Q, L, 3)
    r = validate_colouring(G, f, L)
    assert f.q == 3 and r.list_ok
    assert r.clustering <= rank_bound(rep.width, rep.degree, 3)


def test_fractional_stated_bound_fails_for_degree_one():
    """K4 split into two bags on a single tree edge: clustering 3 > w*d^w = 2."""
    G = gen.complete(4)
    Q = QuasiTreePartition.make([None, 0], [[0, 1], [2, 3]], [[]] * 4)
    L = ListAssignment.make([[1, 3], [2, 3], [2, 4], [2, 5]])
    r = validate_colouring(G, colour_fractional_qtp(G, Q, L, 1), L)
    assert r.clustering == 3 > fractional_bound(2, 1)
    assert r.clustering <= rank_bound(2, 1, 1)


def test_fractional_stated_bound_fails_for_many_colours():
    """P3 as a path partition with 3 colours per vertex: clustering 3 > 2."""
    G = gen.path(3)
    L = ListAssignment.uniform(3, [1, 2, 3, 4])
    r = validate_colouring(G, colour_fractional_qtp(G, path_partition(3), L, 3), L)
    assert r.clustering == 3 > fractional_bound(1, 2)
    assert r.clustering <= rank_bound(1, 2, 3)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=14), st.integers(1, 3), st.integers(0, 10**6))
def test_all_colourers_random(G, ell, seed):
    Q = build_qtp_degeneracy(G)
    rep = validate_qtp(G, Q)
    r, w, d = rep.quasiness, rep.width, rep.degree
    if rep.clean:
        need = ell * (r + 1) + 1
        L = ListAssignment.random(G.n, need, need + 3, seed)
        out = validate_colouring(G, colour_clean_qtp(G, Q, L, ell), L)
        assert out.list_ok and out.clustering <= clean_bound(ell, w, d)
    cap = max(heavy_children(G, Q, r + 2), default=0)
    L = ListAssignment.random(G.n, r + 2, r + 5, seed)
    out = validate_colouring(G, colour_heavy_qtp(G, Q, L, cap), L)
    assert out.list_ok and out.clustering <= heavy_bound(w, cap)
    need = (r + 1) * ell + 1
    L = ListAssignment.random(G.n, need, need + 3, seed)
    f = colour_fractional_qtp(G, Q, L, ell)
    out = validate_colouring(G, f, L)
    assert out.list_ok and f.q == ell
    assert out.clustering <= rank_bound(w, d, ell)


def test_colouring_is_deterministic():
    G = gen.random_partial_ktree(40, 2, 1)
    Q = build_qtp_degeneracy(G)
    L = ListAssignment.random(G.n, 5, 9, 4)
    assert colour_fractional_qtp(G, Q, L, 2) == colour_fractional_qtp(G, Q, L, 2)


def test_excluded_t_values():
    assert excluded_t(1, 3, 3) == 21
    assert excluded_t(1, 3, 3, 4) == 25
