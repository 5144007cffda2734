import itertools

import pytest

from oracles import brute_col2, setwise_feasible, simple_adj
from twocol import generators
from twocol.exact import TooLarge, col2_exact, feasible_d, prove_lower_bound
from twocol.ordering import back_profile, verify


def cycle(n):
    return simple_adj([(i, (i + 1) % n) for i in range(n)], range(n))


def complete(n):
    return simple_adj(itertools.combinations(range(n), 2), range(n))


# Found by search: committing to the first vertex whose back-set fits,
# without the clique condition, loses every completion here at d = 3.
TRAP = {0: {1, 4, 5}, 1: {0, 3, 4, 6}, 2: {3, 5}, 3: {1, 2, 4, 6},
        4: {0, 1, 3, 6}, 5: {0, 2, 6}, 6: {1, 3, 4, 5}}


def greedy_commit(adj, d):
    """Backward placement that always takes the first vertex whose back-set fits."""
    top = set()
    while len(top) < len(adj):
        for v in sorted(set(adj) - top):
            back = set(adj[v]) - top
            for w in adj[v] & top:
                back |= adj[w] - top
            back.discard(v)
            if len(back) <= d:
                top.add(v)
                break
        else:
            return False
    return True


def test_single_vertex():
    assert col2_exact({0: set()}) == 1


def test_small_values():
    assert col2_exact(complete(4)) == 4
    assert col2_exact(cycle(4)) == 3
    assert col2_exact(simple_adj([(0, i) for i in range(1, 6)], range(6))) == 2
    assert col2_exact(simple_adj([(i, i + 1) for i in range(4)], range(5))) == 2


def test_tetrahedron_with_outer_k_matches_k4():
    g = generators.named("tetrahedron")
    K = set(g.outer_face().vertices(g))
    assert col2_exact(g, K=K) == 4 == brute_col2(g.adjacency(), K=K)


def test_c4_feasibility():
    assert feasible_d(cycle(4), 1) is None
    witness = feasible_d(cycle(4), 2)
    assert verify(cycle(4), witness, 2).max_back <= 2


def test_top_bound_always_feasible():
    for adj in (complete(6), cycle(7), generators.named("octahedron")):
        n = len(adj) if isinstance(adj, dict) else adj.n
        assert feasible_d(adj, n - 1) is not None


def test_feasible_is_monotone_in_d():
    for g in (generators.named("icosahedron"), generators.named("octahedron"), cycle(6)):
        results = [feasible_d(g, d) is not None for d in range(8)]
        first = results.index(True)
        assert all(results[first:])


def test_witnesses_verify():
    g = generators.named("icosahedron")
    for d in range(6, 9):
        order = feasible_d(g, d)
        assert verify(g, order, d).max_back <= d


def test_relative_with_k_prefix():
    g = generators.random_triangulation(9, seed=4, flips=6)
    K = set(g.outer_face().vertices(g))
    C = {max(g.vertices)}
    value = col2_exact(g, C, K)
    assert value == brute_col2(g.adjacency(), C, K)
    order = feasible_d(g, value - 1, C, K)
    verify(g, order, value - 1, K, C)


def test_too_large():
    g = generators.random_triangulation(30, seed=1)
    with pytest.raises(TooLarge):
        col2_exact(g)
    with pytest.raises(TooLarge):
        feasible_d(g, 7, n_limit=10)


def test_icosahedron_exact_value():
    g = generators.named("icosahedron")
    assert col2_exact(g) == 7
    assert setwise_feasible(g.adjacency(), 6)
    assert not setwise_feasible(g.adjacency(), 5)


def test_lower_bound_c4():
    res = prove_lower_bound(cycle(4), 1, budget_seconds=10)
    assert res.status == "infeasible" and res.infeasible


def test_lower_bound_icosahedron_feasible_at_seven():
    g = generators.named("icosahedron")
    res = prove_lower_bound(g, 7, budget_seconds=10)
    assert res.status == "feasible"
    verify(g, res.ordering, 7)


def test_lower_bound_matches_exact_on_small_graphs():
    for seed in range(20):
        g = generators.random_triangulation(8 + seed % 5, seed, flips=seed)
        value = col2_exact(g)
        assert prove_lower_bound(g, value - 2, 10).status == "infeasible"
        res = prove_lower_bound(g, value - 1, 10)
        assert res.status == "feasible"
        assert back_profile(g, res.ordering).max_back <= value - 1


def test_unconditional_forcing_is_unsound_but_search_is_not():
    assert setwise_feasible(TRAP, 3)
    assert not greedy_commit(TRAP, 3)
    res = prove_lower_bound(TRAP, 3, budget_seconds=10)
    assert res.status == "feasible"
    verify(TRAP, res.ordering, 3)
    assert col2_exact(TRAP) == brute_col2(TRAP) == 4


def test_timeout_is_a_result():
    g = generators.kleetope(generators.named("dodecahedron"))
    res = prove_lower_bound(g, 6, budget_seconds=0.05)
    assert res.status in ("timeout", "infeasible")
    assert res.ordering is None
