import pytest

from twocol import generators
from twocol.graphio import (
    FormatError,
    parse_graph,
    parse_ordering,
    read_graph,
    report,
    serialize_graph,
    serialize_ordering,
)

TRIANGLE = """twocol-graph 1
# a triangle
meta family triangle
vertex 0
vertex 1
vertex 2
dart 0 vertex 0 twin 1 rnext 5
dart 1 vertex 1 twin 0 rnext 2
dart 2 vertex 1 twin 3 rnext 1
dart 3 vertex 2 twin 2 rnext 4
dart 4 vertex 2 twin 5 rnext 3
dart 5 vertex 0 twin 4 rnext 0
outer 0
K 0 1 2
C
"""


def test_parse_triangle():
    gf = parse_graph(TRIANGLE)
    assert gf.graph.n == 3 and gf.graph.m == 3
    assert gf.K == [0, 1, 2] and gf.has_K and gf.C == []
    assert gf.meta == {"family": "triangle"}


@pytest.mark.parametrize("family", ["triangle", "digon", "icosahedron", "dodecahedron"])
def test_round_trip(family):
    g = generators.named(family)
    text = serialize_graph(g, sorted(g.outer_face().vertices(g))[:2], [], {"family": family})
    gf = parse_graph(text)
    assert gf.graph.canonical() == g.canonical()
    assert serialize_graph(gf.graph, gf.K, gf.C, gf.meta) == text


def test_missing_k_line_is_distinguished():
    g = generators.triangle()
    gf = parse_graph(serialize_graph(g, with_K=False))
    assert not gf.has_K


def _bad(text, needle):
    with pytest.raises(FormatError) as err:
        parse_graph(text, "g.txt")
    assert needle in str(err.value)
    return err.value


def test_error_header():
    err = _bad("hello\n", "expected header")
    assert err.line == 1


def test_error_line_numbers():
    text = TRIANGLE.replace("dart 3 vertex 2 twin 2 rnext 4", "dart 3 vertex 2 twin 2 rnext 1")
    err = _bad(text, "leaves a different vertex")
    assert err.line == 10
    assert str(err).startswith("g.txt:10:")


def test_error_loop():
    text = TRIANGLE.replace("dart 1 vertex 1 twin 0", "dart 1 vertex 0 twin 0")
    _bad(text, "loop")


def test_error_bad_integer():
    err = _bad(TRIANGLE.replace("vertex 2\n", "vertex two\n", 1), "expected integers")
    assert err.line == 6


def test_error_duplicates_and_unknowns():
    _bad(TRIANGLE.replace("vertex 2\n", "vertex 1\n", 1), "already declared")
    _bad(TRIANGLE + "frob 1\n", "unknown record")
    _bad(TRIANGLE.replace("K 0 1 2", "K 0 1 9"), "unknown vertex 9")
    _bad(TRIANGLE.replace("outer 0", "outer 77"), "outer dart 77")
    _bad(TRIANGLE.replace("rnext 5\n", "rnext 9\n", 1), "not declared")


def test_error_rnext_not_permutation():
    text = TRIANGLE.replace("dart 5 vertex 0 twin 4 rnext 0", "dart 5 vertex 0 twin 4 rnext 5")
    _bad(text, "rnext of both")


def test_read_missing_file(tmp_path):
    with pytest.raises(FormatError, match="cannot read"):
        read_graph(tmp_path / "nope.txt")


def test_ordering_round_trip():
    text = serialize_ordering([3, 1, 2], 7)
    of = parse_ordering(text)
    assert of.ordering == [3, 1, 2] and of.d == 7
    assert parse_ordering(serialize_ordering([0])).d is None


def test_ordering_errors():
    with pytest.raises(FormatError, match="repeated"):
        parse_ordering("twocol-ordering 1\n1\n2\n1\n")
    with pytest.raises(FormatError) as err:
        parse_ordering("twocol-ordering 1\nd 7\n1 2\n")
    assert err.value.line == 3
    with pytest.raises(FormatError):
        parse_ordering("")


def test_report_format():
    text = report([("a", 1), ("ok", True), ("order", [3, 1])], "done")
    assert text == "a=1\nok=1\norder=3,1\nsummary done\n"
