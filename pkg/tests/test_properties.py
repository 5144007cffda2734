"""Randomized invariants driven by hypothesis."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ref_back_set, simple_adj
from twocol import generators
from twocol.constructive import solve_plane
from twocol.discharging import audit, target_of
from twocol.graphio import parse_graph, serialize_graph
from twocol.ordering import back_profile, verify


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs)))
    adj = simple_adj(edges, range(n))
    C = draw(st.sets(st.sampled_from(range(n)), max_size=n // 2))
    order = draw(st.permutations([v for v in range(n) if v not in C]))
    return adj, C, list(order)


@given(small_graphs())
@settings(max_examples=300, deadline=None)
def test_back_sets_follow_definition(case):
    adj, C, order = case
    prof = back_profile(adj, order, C)
    for v in order:
        assert set(prof.witness[v]) == ref_back_set(adj, C, order, v)


@given(st.integers(3, 60), st.integers(0, 10**6), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_random_triangulation_invariants(n, seed, flip_factor):
    g = generators.random_triangulation(n, seed, flips=flip_factor * n)
    g.validate()
    assert g.euler_check() and generators.is_triangulation(g)
    rep = audit(target_of(g))
    assert rep.identity_holds and rep.conserved and not rep.heavy_violations
    text = serialize_graph(g)
    assert serialize_graph(parse_graph(text).graph) == text


@given(st.integers(3, 45), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_constructive_on_random_relative_targets(n, seed):
    rng = random.Random(seed)
    g = generators.random_triangulation(n, seed, flips=rng.randrange(3 * n))
    outer = list(g.outer_face().vertices(g))
    K = rng.sample(outer, rng.randrange(0, 4))
    C = set()
    for v in rng.sample(sorted(g.vertices), g.n):
        if v not in K and rng.random() < 0.5 and len(g.adjacent(v) - C) <= 4:
            C.add(v)
    trace = []
    res = solve_plane(g, K, C, trace=trace)
    verify(g, res.ordering, 7, K, C)
    assert all(e.decreasing() for e in trace)
