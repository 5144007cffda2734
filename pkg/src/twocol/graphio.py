"""Line-oriented text formats for plane graphs, orderings and reports.

Graph file::

    twocol-graph 1
    meta family icosahedron
    vertex 0
    dart 0 vertex 0 twin 1 rnext 4
    outer 0
    K 0 1 2
    C 7

Lines may appear in any order after the header; ``#`` starts a comment.
Ordering file::

    twocol-ordering 1
    d 7
    3
    0
    ...
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from .plane_graph import PlaneGraph, PlaneGraphError

GRAPH_HEADER = "twocol-graph"
ORDERING_HEADER = "twocol-ordering"
FORMAT_VERSION = 1


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


@dataclass
class GraphFile:
    graph: PlaneGraph
    K: list = field(default_factory=list)
    C: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    has_K: bool = False


@dataclass
class OrderingFile:
    ordering: list
    d: int | None = None


def _ints(tokens: list, lineno: int, source: str) -> list:
    try:
        return [int(x) for x in tokens]
    except ValueError as exc:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno, source) from exc


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str, source: str = "<input>") -> GraphFile:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty graph file", None, source)
    lineno, first = lines[0]
    head = first.split()
    if len(head) != 2 or head[0] != GRAPH_HEADER:
        raise FormatError(f"expected header '{GRAPH_HEADER} {FORMAT_VERSION}'", lineno, source)
    if head[1] != str(FORMAT_VERSION):
        raise FormatError(f"unsupported format version {head[1]}", lineno, source)
    vertices, darts, meta = [], [], {}
    dart_line, vertex_line = {}, {}
    outer = None
    K, C, has_K = [], [], False
    for lineno, line in lines[1:]:
        tok = line.split()
        kind = tok[0]
        if kind == "vertex":
            if len(tok) != 2:
                raise FormatError("expected 'vertex ID'", lineno, source)
            (v,) = _ints(tok[1:], lineno, source)
            if v in vertex_line:
                raise FormatError(f"vertex {v} already declared on line {vertex_line[v]}", lineno, source)
            vertex_line[v] = lineno
            vertices.append(v)
        elif kind == "dart":
            if len(tok) != 8 or tok[2] != "vertex" or tok[4] != "twin" or tok[6] != "rnext":
                raise FormatError("expected 'dart ID vertex V twin T rnext R'", lineno, source)
            d, v, t, r = _ints([tok[1], tok[3], tok[5], tok[7]], lineno, source)
            if d in dart_line:
                raise FormatError(f"dart {d} already declared on line {dart_line[d]}", lineno, source)
            dart_line[d] = lineno
            darts.append((d, v, t, r))
        elif kind == "outer":
            if len(tok) != 2:
                raise FormatError("expected 'outer DART' or 'outer none'", lineno, source)
            outer = None if tok[1] == "none" else _ints(tok[1:], lineno, source)[0]
        elif kind == "K":
            K = _ints(tok[1:], lineno, source)
            has_K = True
        elif kind == "C":
            C = _ints(tok[1:], lineno, source)
        elif kind == "meta":
            if len(tok) < 2:
                raise FormatError("expected 'meta KEY [VALUE]'", lineno, source)
            meta[tok[1]] = " ".join(tok[2:])
        else:
            raise FormatError(f"unknown record {kind!r}", lineno, source)
    _check_darts(darts, set(vertices), dart_line, source)
    if outer is not None and outer not in dart_line:
        raise FormatError(f"outer dart {outer} is not declared", None, source)
    try:
        g = PlaneGraph.build(vertices, darts, outer)
    except PlaneGraphError as exc:
        raise FormatError(f"invalid embedding: {exc}", None, source) from exc
    for name, vs in (("K", K), ("C", C)):
        for v in vs:
            if v not in g.vertices:
                raise FormatError(f"{name} names unknown vertex {v}", None, source)
    return GraphFile(g, K, C, meta, has_K)


def _check_darts(darts, vertices, dart_line, source) -> None:
    """Per-dart checks that can point at the offending line."""
    twin = {d: t for d, _, t, _ in darts}
    origin = {d: v for d, v, _, _ in darts}
    rnext_seen = {}
    for d, v, t, r in darts:
        ln = dart_line[d]
        if v not in vertices:
            raise FormatError(f"dart {d} starts at undeclared vertex {v}", ln, source)
        if t not in twin:
            raise FormatError(f"twin {t} of dart {d} is not declared", ln, source)
        if t == d or twin[t] != d:
            raise FormatError(f"twin of dart {d} is not an involution", ln, source)
        if origin[t] == v:
            raise FormatError(f"dart {d} forms a loop at vertex {v}", ln, source)
        if r not in origin:
            raise FormatError(f"rnext {r} of dart {d} is not declared", ln, source)
        if origin[r] != v:
            raise FormatError(f"rnext {r} of dart {d} leaves a different vertex", ln, source)
        if r in rnext_seen:
            raise FormatError(f"dart {r} is rnext of both {rnext_seen[r]} and {d}", ln, source)
        rnext_seen[r] = d


def serialize_graph(g: PlaneGraph, K: Iterable = (), C: Iterable = (), meta: dict | None = None,
                    with_K: bool = True) -> str:
    out = [f"{GRAPH_HEADER} {FORMAT_VERSION}"]
    for key, value in sorted((meta or {}).items()):
        out.append(f"meta {key} {value}".rstrip())
    for v in sorted(g.vertices):
        out.append(f"vertex {v}")
    for d in sorted(g.origin):
        out.append(f"dart {d} vertex {g.origin[d]} twin {g.twin[d]} rnext {g.rnext[d]}")
    out.append(f"outer {'none' if g.outer_dart is None else g.outer_dart}")
    if with_K:
        out.append(" ".join(["K"] + [str(v) for v in K]))
    out.append(" ".join(["C"] + [str(v) for v in sorted(C)]))
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> GraphFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read: {exc.strerror}", None, str(p)) from exc
    return parse_graph(text, str(p))


def write_text(path: str | Path | None, text: str, stream: TextIO | None = None) -> None:
    if path is None or str(path) == "-":
        (stream if stream is not None else sys.stdout).write(text)
    else:
        Path(path).write_text(text)


def parse_ordering(text: str, source: str = "<input>") -> OrderingFile:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty ordering file", None, source)
    lineno, first = lines[0]
    if first.split() != [ORDERING_HEADER, str(FORMAT_VERSION)]:
        raise FormatError(f"expected header '{ORDERING_HEADER} {FORMAT_VERSION}'", lineno, source)
    d = None
    seq, seen = [], {}
    for lineno, line in lines[1:]:
        tok = line.split()
        if tok[0] == "d":
            if len(tok) != 2:
                raise FormatError("expected 'd INTEGER'", lineno, source)
            d = _ints(tok[1:], lineno, source)[0]
            continue
        if len(tok) != 1:
            raise FormatError("expected one vertex id per line", lineno, source)
        (v,) = _ints(tok, lineno, source)
        if v in seen:
            raise FormatError(f"vertex {v} repeated (first on line {seen[v]})", lineno, source)
        seen[v] = lineno
        seq.append(v)
    return OrderingFile(seq, d)


def serialize_ordering(ordering: Iterable, d: int | None = None) -> str:
    out = [f"{ORDERING_HEADER} {FORMAT_VERSION}"]
    if d is not None:
        out.append(f"d {d}")
    out += [str(v) for v in ordering]
    return "\n".join(out) + "\n"


def read_ordering(path: str | Path) -> OrderingFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read: {exc.strerror}", None, str(p)) from exc
    return parse_ordering(text, str(p))


def report(pairs: list, summary: str) -> str:
    """``key=value`` lines followed by one ``summary`` line."""
    out = []
    for key, value in pairs:
        if isinstance(value, (list, tuple)):
            value = ",".join(str(x) for x in value)
        elif isinstance(value, bool):
            value = int(value)
        out.append(f"{key}={value}")
    out.append(f"summary {summary}")
    return "\n".join(out) + "\n"
