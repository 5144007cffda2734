import itertools
import random

import pytest

from oracles import ref_back_set, simple_adj
from twocol import generators
from twocol.ordering import (
    BackDegreeExceeded,
    DomainMismatch,
    KPrefixViolation,
    NotNeighbors,
    back_profile,
    back_set,
    col2_from_ordering,
    friends,
    is_valid,
    verify,
)


def random_graph(rng, n, p):
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return simple_adj(edges, range(n))


def path3():
    return simple_adj([("a", "b"), ("b", "c")], "abc")


def test_path_common_neighbor_clause_needs_later_middle():
    assert back_set(path3(), (), ["a", "b", "c"], "c") == ("b",)
    # with b last, a enters L(c) through the later common neighbor b
    assert back_set(path3(), (), ["a", "c", "b"], "c") == ("a",)


def test_triangle_last_vertex_sees_both():
    adj = simple_adj([("x", "y"), ("y", "z"), ("x", "z")], "xyz")
    assert back_set(adj, (), ["x", "y", "z"], "z") == ("x", "y")


def test_star_with_center_in_c():
    adj = simple_adj([(0, 1), (0, 2), (0, 3)], range(4))
    assert back_set(adj, {0}, [1, 2, 3], 3) == (1, 2)
    assert back_set(adj, {0}, [1, 2, 3], 1) == ()


def test_triangle_target_any_ordering_valid():
    g = generators.triangle()
    for perm in itertools.permutations(range(3)):
        assert verify(g, perm, 7, K={0, 1, 2}).max_back == 2


def test_c4_best_ordering():
    adj = simple_adj([(1, 2), (2, 3), (3, 4), (4, 1)], range(1, 5))
    prof = verify(adj, [1, 3, 2, 4], 2)
    assert prof.max_back == 2
    assert col2_from_ordering(prof) == 3


def test_c4_below_two_reports_offender():
    adj = simple_adj([(1, 2), (2, 3), (3, 4), (4, 1)], range(1, 5))
    with pytest.raises(BackDegreeExceeded) as err:
        verify(adj, [1, 3, 2, 4], 1)
    assert err.value.vertex == 2
    assert tuple(err.value.back) == (1, 3)


def test_offender_is_earliest_violation():
    adj = simple_adj(itertools.combinations(range(5), 2), range(5))
    with pytest.raises(BackDegreeExceeded) as err:
        verify(adj, [4, 3, 2, 1, 0], 2)
    assert err.value.vertex == 1
    assert len(err.value.back) == 3


def test_k_prefix_violation():
    g = generators.named("tetrahedron")
    K = set(g.outer_face().vertices(g))
    inner = (set(g.vertices) - K).pop()
    with pytest.raises(KPrefixViolation):
        verify(g, [inner] + sorted(K), 7, K)
    assert verify(g, sorted(K) + [inner], 7, K).max_back == 3


def test_domain_mismatch():
    adj = simple_adj([(0, 1)], range(3))
    with pytest.raises(DomainMismatch):
        verify(adj, [0, 1], 5)
    with pytest.raises(DomainMismatch):
        verify(adj, [0, 1, 1, 2], 5)
    with pytest.raises(DomainMismatch):
        verify(adj, [0, 1, 2], 5, C={2})


def test_isolated_vertices_give_one():
    adj = {0: set(), 1: set()}
    assert col2_from_ordering(back_profile(adj, [0, 1])) == 1


def test_k4_gives_four():
    adj = simple_adj(itertools.combinations(range(4), 2), range(4))
    assert col2_from_ordering(back_profile(adj, [0, 1, 2, 3])) == 4


def test_profile_matches_definition():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randrange(2, 9)
        adj = random_graph(rng, n, 0.45)
        C = {v for v in adj if rng.random() < 0.25}
        order = [v for v in range(n) if v not in C]
        rng.shuffle(order)
        prof = back_profile(adj, order, C)
        for v in order:
            assert set(prof.witness[v]) == ref_back_set(adj, C, order, v)
        assert prof.max_back == max(prof.sizes.values(), default=0)


def test_friends_via_earlier_neighbor():
    adj = simple_adj([(0, 1), (1, 2), (0, 3)], range(4))
    assert friends(adj, (), [1, 0, 2, 3], 0, 1) == (1,)


def test_friends_via_degree_four_c_vertex():
    # wheel around a C-vertex c: rim 0..3, all faces at c triangular
    adj = simple_adj([("c", 0), ("c", 1), ("c", 2), ("c", 3), (0, 1), (1, 2), (2, 3), (3, 0)],
                     ["c", 0, 1, 2, 3])
    for order in itertools.permutations(range(4)):
        for u in range(4):
            assert len(friends(adj, {"c"}, order, u, "c")) <= 1


def test_friends_rejects_non_neighbors():
    with pytest.raises(NotNeighbors):
        friends(path3(), (), ["a", "b", "c"], "a", "c")


def test_friends_union_is_back_set():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randrange(3, 9)
        adj = random_graph(rng, n, 0.4)
        C = {v for v in adj if rng.random() < 0.3}
        order = [v for v in range(n) if v not in C]
        rng.shuffle(order)
        for u in order:
            union = set()
            for v in adj[u]:
                union |= set(friends(adj, C, order, u, v))
            assert union == set(back_set(adj, C, order, u))


def test_edge_deletion_never_enlarges_back_sets():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randrange(3, 9)
        adj = random_graph(rng, n, 0.5)
        C = {v for v in adj if rng.random() < 0.2}
        edges = [(u, v) for u in adj for v in adj[u] if u < v]
        if not edges:
            continue
        order = [v for v in range(n) if v not in C]
        rng.shuffle(order)
        before = back_profile(adj, order, C).witness
        u, v = rng.choice(edges)
        adj[u].discard(v)
        adj[v].discard(u)
        after = back_profile(adj, order, C).witness
        for x in order:
            assert set(after[x]) <= set(before[x])


def test_chord_validity_transfers_to_smaller_graph():
    rng = random.Random(21)
    for seed in range(40):
        g = generators.random_triangulation(rng.randrange(4, 12), seed, flips=seed % 5)
        order = sorted(g.vertices)
        rng.shuffle(order)
        d = back_profile(g, order).max_back
        h = g.copy()
        h.delete_edge(rng.choice(h.edges()))
        assert is_valid(g, order, d)
        assert is_valid(h, order, d)


def test_moving_simplicial_vertex_to_c_never_hurts():
    rng = random.Random(17)
    checked = 0
    for _ in range(300):
        n = rng.randrange(3, 9)
        adj = random_graph(rng, n, 0.5)
        order = list(range(n))
        rng.shuffle(order)
        for w in range(n):
            nb = adj[w]
            if all(b in adj[a] for a in nb for b in nb if a != b):
                before = back_profile(adj, order, ()).sizes
                rest = [v for v in order if v != w]
                after = back_profile(adj, rest, {w}).sizes
                assert all(after[v] <= before[v] for v in rest)
                checked += 1
    assert checked > 100
