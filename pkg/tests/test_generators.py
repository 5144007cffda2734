import networkx as nx
import pytest

from twocol import generators
from twocol.graphio import serialize_graph


def degree_multiset(g):
    return sorted(g.degree(v) for v in g.vertices)


def test_icosahedron():
    g = generators.named("icosahedron")
    assert g.n == 12 and set(degree_multiset(g)) == {5}
    assert sum(1 for f in g.faces() if f.length == 3) == 20


def test_dodecahedron():
    g = generators.named("dodecahedron")
    assert g.n == 20 and set(degree_multiset(g)) == {3}
    assert sorted(f.length for f in g.faces()) == [5] * 12


def test_octahedron_and_tetrahedron():
    assert degree_multiset(generators.named("octahedron")) == [4] * 6
    assert degree_multiset(generators.named("tetrahedron")) == [3] * 4


def test_double_wheel():
    g = generators.double_wheel(5)
    assert g.n == 7 and generators.is_triangulation(g)
    assert degree_multiset(g) == [4] * 5 + [5, 5]


def test_unknown_family():
    with pytest.raises(generators.UnknownFamily):
        generators.named("cube")


def test_kleetope_of_dodecahedron():
    g = generators.kleetope(generators.named("dodecahedron"))
    assert g.n == 32
    assert generators.is_triangulation(g)
    fives = [v for v in g.vertices if g.degree(v) == 5]
    sixes = [v for v in g.vertices if g.degree(v) == 6]
    assert len(fives) == 12 and len(sixes) == 20
    assert generators.degree_five_nonadjacent(g)


def test_kleetope_of_tetrahedron():
    g = generators.kleetope(generators.named("tetrahedron"))
    assert g.n == 8 and g.euler_check() and generators.is_triangulation(g)


def test_kleetope_degree_law():
    for fam in ("tetrahedron", "octahedron", "icosahedron", "dodecahedron"):
        base = generators.named(fam)
        g = generators.kleetope(base)
        for v in base.vertices:
            assert g.degree(v) == 2 * base.degree(v)
        assert len(g.faces()) == sum(f.length for f in base.faces())


def test_kleetope_triples_triangle_count():
    base = generators.named("icosahedron")
    assert len(generators.kleetope(base).faces()) == 3 * len(base.faces())


def test_random_triangulation_small_cases():
    g = generators.random_triangulation(3, seed=0)
    assert g.n == 3 and g.m == 3
    g = generators.random_triangulation(10, seed=1, flips=0)
    assert set(g.outer_face().vertices(g)) == {0, 1, 2}
    assert len(g.faces()) == 16


def test_random_triangulations_are_triangulations():
    for seed in range(40):
        g = generators.random_triangulation(4 + seed * 3, seed, flips=seed * 4)
        g.validate()
        assert generators.is_triangulation(g)
        assert g.m == 3 * g.n - 6


def test_seeds_are_deterministic():
    a = serialize_graph(generators.random_triangulation(50, seed=5, flips=100))
    b = serialize_graph(generators.random_triangulation(50, seed=5, flips=100))
    c = serialize_graph(generators.random_triangulation(50, seed=6, flips=100))
    assert a == b != c


def test_geodesic_subdivision():
    g = generators.subdivide(generators.named("icosahedron"))
    assert (g.n, g.m) == (42, 120)
    assert degree_multiset(g) == [5] * 12 + [6] * 30
    assert generators.is_triangulation(g)


def test_vertex_connectivity_known_values():
    assert generators.vertex_connectivity(generators.named("icosahedron")) == 5
    assert generators.vertex_connectivity(generators.named("tetrahedron")) == 3
    assert generators.vertex_connectivity(generators.named("octahedron")) == 4
    assert generators.vertex_connectivity(generators.kleetope(generators.named("dodecahedron"))) == 5


def test_vertex_connectivity_matches_networkx():
    for seed in range(25):
        g = generators.random_triangulation(6 + seed, seed, flips=3 * seed)
        h = nx.Graph()
        h.add_edges_from((g.origin[d], g.head(d)) for d in g.edges())
        assert generators.vertex_connectivity(g) == nx.node_connectivity(h)
