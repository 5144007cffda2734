import itertools
import random

from oracles import simple_adj
from twocol import generators
from twocol.exact import col2_exact
from twocol.heuristics import greedy_backward
from twocol.ordering import back_profile, verify


def test_star_gets_one():
    star = simple_adj([(0, i) for i in range(1, 10)], range(10))
    assert back_profile(star, greedy_backward(star)).max_back == 1


def test_k4_gets_three():
    k4 = simple_adj(itertools.combinations(range(4), 2), range(4))
    assert back_profile(k4, greedy_backward(k4)).max_back == 3


def test_icosahedron_bounds():
    g = generators.named("icosahedron")
    mb = back_profile(g, greedy_backward(g)).max_back
    assert col2_exact(g) <= mb + 1 <= 11


def test_output_verifies_at_own_bound():
    for seed in range(20):
        g = generators.random_triangulation(20 + seed, seed, flips=seed)
        order = greedy_backward(g)
        verify(g, order, back_profile(g, order).max_back)


def test_k_first_and_c_excluded():
    g = generators.random_triangulation(15, seed=2, flips=10)
    K = set(g.outer_face().vertices(g))
    C = {v for v in g.vertices if v not in K and len(g.adjacent(v)) <= 4}
    order = greedy_backward(g, C, K)
    assert set(order[:3]) == K
    assert not C & set(order)
    verify(g, order, back_profile(g, order, C).max_back, K, C)


def test_deterministic():
    g = generators.random_triangulation(40, seed=9, flips=40)
    assert greedy_backward(g) == greedy_backward(g)
    assert greedy_backward(g, seed=3) == greedy_backward(g, seed=3)


def test_never_beats_exact():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randrange(3, 10)
        adj = simple_adj([p for p in itertools.combinations(range(n), 2) if rng.random() < 0.4], range(n))
        assert back_profile(adj, greedy_backward(adj)).max_back + 1 >= col2_exact(adj)
