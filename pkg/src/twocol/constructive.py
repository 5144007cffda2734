"""Constructive 7-two-degenerate orderings of plane graphs.

A *target* ``(G, K, C)`` is a plane graph whose outer face is incident
exactly with the 2 or 3 vertices of ``K``, together with a set ``C``
disjoint from ``K`` in which every vertex has at most four neighbors
outside ``C``.  A *valid* ordering of ``V - C`` puts ``K`` first and
keeps every relative back-set at size 7 or less.

:func:`solve` repeatedly finds a local configuration that can be
reduced to a strictly smaller target (the measure is the lexicographic
tuple ``(n, -c, e_C, q, -t, e)``), solves the smaller target, and lifts
its ordering back.  Every reduction comes with an ordering-lifting
recipe: keep the child ordering, append moved vertices at the end, or
concatenate the two sides of a split.  If no reduction applies to a
target that is not already trivial, :class:`IrreducibleTarget` is
raised; for a correct structure theory that never happens, so it is
treated as a falsification event and carries the offending target.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .ordering import OrderingError, verify
from .plane_graph import PlaneGraph

DEGENERACY = 7


class TargetError(ValueError):
    pass


class KNotOnOuterFace(TargetError):
    pass


class BadC(TargetError):
    pass


class BadTarget(TargetError):
    pass


class InapplicableStep(TargetError):
    pass


class FalsificationEvent(RuntimeError):
    """A reduction scan or a lifted ordering contradicted the structure theory."""

    def __init__(self, message: str, target: "Target | None" = None):
        super().__init__(message)
        self.target = target


class IrreducibleTarget(FalsificationEvent):
    pass


class CertificationFailed(FalsificationEvent):
    def __init__(self, message: str, target=None, vertex=None, back=()):
        super().__init__(message, target)
        self.vertex = vertex
        self.back = tuple(back)


class Kind(str, Enum):
    DeleteEdgeInC = "DeleteEdgeInC"
    DeleteIsolatedCVertex = "DeleteIsolatedCVertex"
    JoinComponents = "JoinComponents"
    DeleteDigonEdge = "DeleteDigonEdge"
    AddChord = "AddChord"
    DeleteSmallCVertex = "DeleteSmallCVertex"
    SuppressParallelAtC = "SuppressParallelAtC"
    MoveVertexToC = "MoveVertexToC"
    SplitOnCycle = "SplitOnCycle"
    MovePathToC = "MovePathToC"
    MoveCycleToC = "MoveCycleToC"
    Move61PathToC = "Move61PathToC"
    BaseCase = "BaseCase"


_APPEND = {Kind.MoveVertexToC, Kind.MovePathToC, Kind.MoveCycleToC}


@dataclass
class Target:
    g: PlaneGraph
    K: frozenset
    C: set = field(default_factory=set)

    def copy(self) -> "Target":
        return Target(self.g.copy(), frozenset(self.K), set(self.C))

    def validate(self) -> None:
        g, K, C = self.g, self.K, self.C
        outer = g.outer_face()
        on_outer = set(outer.vertices(g)) if outer is not None else set()
        if on_outer != set(K):
            raise BadTarget(f"outer face vertices {sorted(on_outer)} differ from K {sorted(K)}")
        if not 2 <= len(K) <= 3:
            raise BadTarget(f"|K| = {len(K)} is not 2 or 3")
        if K & C:
            raise BadTarget(f"K and C intersect in {sorted(K & C)}")
        if not C <= g.vertices:
            raise BadTarget("C contains unknown vertices")
        for v in C:
            if len(g.adjacent(v) - C) > 4:
                raise BadTarget(f"C-vertex {v} has more than 4 neighbors outside C")


@dataclass(frozen=True)
class ReductionStep:
    kind: Kind
    vertices: tuple = ()
    darts: tuple = ()
    note: str = ""

    @property
    def recipe(self) -> str:
        if self.kind in _APPEND:
            return "append"
        if self.kind is Kind.Move61PathToC:
            return "append-swap-last"
        if self.kind is Kind.SplitOnCycle:
            return "concatenate"
        if self.kind is Kind.BaseCase:
            return "base"
        return "identity"

    def describe(self) -> str:
        parts = [self.kind.value]
        if self.vertices:
            parts.append("v=" + ",".join(map(str, self.vertices)))
        if self.darts:
            parts.append("d=" + ",".join(map(str, self.darts)))
        if self.note:
            parts.append(self.note)
        return " ".join(parts)


@dataclass
class TraceEntry:
    depth: int
    step: ReductionStep
    before: tuple
    after: tuple            # one measure per child

    def decreasing(self) -> bool:
        return all(a < self.before for a in self.after)

    def line(self) -> str:
        after = " ".join(str(a) for a in self.after)
        return f"{self.depth}\t{self.step.describe()}\t{self.before}\t{after}"


# ----------------------------------------------------------------------
# measure


def measure(t: Target) -> tuple:
    """``(n, -c, e_C, q, -t, e)``; ``t`` counts every length-3 face, outer included."""
    g, C = t.g, t.C
    e_c = sum(1 for d in g.edges() if g.origin[d] in C or g.head(d) in C)
    tri = sum(1 for f in g.faces() if f.length == 3)
    return (g.n, -len(C), e_c, len(g.components()), -tri, g.m)


def vertex_classes(t: Target) -> dict:
    """``(a, b)`` for every vertex outside C, multiplicities counted."""
    g, C = t.g, t.C
    out = {}
    for v in g.vertices:
        if v in C:
            continue
        a = b = 0
        for w in g.neighbors(v):
            if w in C:
                b += 1
            else:
                a += 1
        out[v] = (a, b)
    return out


# ----------------------------------------------------------------------
# normalization


def _outer_corner(g: PlaneGraph, v: int) -> int | None:
    if g.degree(v) == 0:
        return None
    for d in g.outer_face().darts:
        if g.origin[d] == v:
            return d
    raise KNotOnOuterFace(f"vertex {v} is not on the outer face")


def _close_outer_face(g: PlaneGraph, K: list) -> None:
    """Add edges among K inside the outer face until only K bounds it."""
    walk = list(g.outer_face().darts)
    start = next(i for i, d in enumerate(walk) if g.origin[d] in K)
    walk = walk[start:] + walk[:start]
    pos = {}
    for i, d in enumerate(walk):
        pos.setdefault(g.origin[d], i)
    order = sorted(K, key=pos.__getitem__)
    corners = [walk[pos[k]] for k in order]
    marks = [pos[k] for k in order] + [len(walk)]
    for i in range(len(order)):
        if marks[i + 1] - marks[i] == 1:
            continue
        u_c, v_c = corners[i], corners[(i + 1) % len(order)]
        x, _ = g.insert_edge(g.origin[u_c], g.origin[v_c], u_c, v_c)
        corners[i] = x
        g.outer_dart = x


@dataclass
class Normalized:
    target: Target
    added: frozenset            # fresh vertices, not part of the input
    removed: frozenset          # C-C edges (u, v) deleted to expose the outer face
    joins: list                 # (u, v) edges added between components


def normalize(g: PlaneGraph, K0: Iterable = (), C: Iterable = ()) -> Normalized:
    """Turn ``(g, K0, C)`` into a target.

    Fresh vertices pad ``K`` to size two, other components are attached
    inside the outer face, and edges among ``K`` are routed around the
    drawing so that the outer face sees only ``K``.  All additions are
    edges between vertices outside ``C``, so a valid ordering of the
    result, restricted to the original vertices, is 7-two-degenerate
    relative to ``C`` in ``g`` with ``K0`` first.
    """
    g = g.copy()
    K0 = list(dict.fromkeys(K0))
    C = set(C)
    if len(K0) > 3:
        raise KNotOnOuterFace("K may hold at most three vertices")
    if not C <= g.vertices or not set(K0) <= g.vertices:
        raise BadC("K and C must be vertex subsets")
    if C & set(K0):
        raise BadC(f"C and K intersect in {sorted(C & set(K0))}")
    for v in C:
        if len(g.adjacent(v) - C) > 4:
            raise BadC(f"C-vertex {v} has more than 4 neighbors outside C")
    outer = g.outer_face()
    on_outer = set(outer.vertices(g)) if outer is not None else set()
    for k in K0:
        if g.degree(k) > 0 and k not in on_outer:
            raise KNotOnOuterFace(f"vertex {k} is not on the outer face")

    removed = _expose_outer(g, C)
    joins = []
    if g.outer_dart is not None:
        main_v = _hub_corner(g, C, g.origin[g.outer_dart])[0]
    elif K0:
        main_v = min(K0)
    else:
        main_v = min(g.vertices - C, default=None)
    for comp in sorted(g.components(), key=min):
        if main_v is None or main_v in comp or comp <= C:
            # all-C components are cleared by the reduction scan itself
            continue
        hub = _hub_corner(g, C, main_v)
        darts = sorted(d for v in comp for d in g.darts_at(v) if v not in C)
        if darts:
            x, x_corner = g.origin[darts[0]], darts[0]
        else:
            x, x_corner = min(comp - C), None
        g.insert_edge(hub[0], x, hub[1], x_corner)
        joins.append((hub[0], x))

    added = []
    K = list(K0)
    if not K:
        k1 = g.add_vertex()
        added.append(k1)
        if main_v is not None:
            hub = _hub_corner(g, C, main_v)
            g.insert_edge(k1, hub[0], None, hub[1])
        K = [k1]
    if len(K) == 1:
        k2 = g.add_vertex()
        added.append(k2)
        g.insert_edge(k2, K[0], None, _outer_corner(g, K[0]))
        K.append(k2)
    _close_outer_face(g, K)
    target = Target(g, frozenset(K), C)
    target.validate()
    return Normalized(target, frozenset(added), frozenset(removed), joins)


def _expose_outer(g: PlaneGraph, C: set) -> list:
    """Delete C-C edges of the outer face until a vertex outside C shows up on it.

    Edges with both ends in C never contribute to a relative back-set,
    so removing them keeps every ordering's back-sets unchanged.
    """
    removed = []
    while g.outer_dart is not None:
        walk = g.outer_face().darts
        if any(g.origin[d] not in C for d in walk):
            break
        d = min(walk)
        removed.append((g.origin[d], g.head(d)))
        g.delete_edge(d)
    return removed


def _hub_corner(g: PlaneGraph, C: set, main_v: int) -> tuple:
    if g.degree(main_v) == 0:
        if main_v in C:
            raise BadC("no vertex outside C on the outer face")
        return main_v, None
    for d in g.outer_face().darts:
        if g.origin[d] not in C:
            return g.origin[d], d
    raise BadC("no vertex outside C on the outer face")


# ----------------------------------------------------------------------
# reduction scan


class _Scan:
    def __init__(self, t: Target):
        self.t = t
        self.g = t.g
        self.C = t.C
        self.K = t.K
        self.faces, self.where = self.g.face_index()
        self.outer_idx = self.where[self.g.outer_dart]
        self._classes = None
        self._adj = None

    @property
    def classes(self):
        if self._classes is None:
            self._classes = vertex_classes(self.t)
        return self._classes

    @property
    def adj(self):
        if self._adj is None:
            self._adj = self.g.adjacency()
        return self._adj

    def internal(self, v) -> bool:
        return v not in self.K and v not in self.C


LATE_SCAN = ("path", "cycle", "path61")


def find_reduction(t: Target, late: tuple = LATE_SCAN) -> ReductionStep:
    """First applicable reduction under the fixed priority scan.

    ``late`` orders the three path/cycle searches, which only run once
    every earlier reduction is exhausted; their proofs do not depend on
    each other, so any order is sound and tests use this to reach all
    three.
    """
    g, C, K = t.g, t.C, t.K
    if g.vertices - C <= K:
        return ReductionStep(Kind.BaseCase, tuple(sorted(K)))
    s = _Scan(t)
    for finder in (
        _edge_in_c,
        _components,
        _digon_face,
        _long_face,
        _small_c_vertex,
        _parallel_at_c,
        _low_vertex,
        _separating_cycle,
    ):
        step = finder(s)
        if step is not None:
            return step
    for name in late:
        step = _LATE[name](s)
        if step is not None:
            return step
    raise IrreducibleTarget("no reduction applies to a non-trivial target", t.copy())


def _edge_in_c(s: _Scan):
    g, C = s.g, s.C
    bridges = []
    for d in g.edges():
        u, v = g.origin[d], g.head(d)
        if u in C and v in C:
            if s.where[d] != s.where[g.twin[d]]:
                return ReductionStep(Kind.DeleteEdgeInC, (u, v), (d,))
            bridges.append(d)
    for d in bridges:
        u, v = g.origin[d], g.head(d)
        for x in (u, v):
            if g.degree(x) == 1:
                return ReductionStep(Kind.DeleteSmallCVertex, (x,), note="leaf")
        walk = list(s.faces[s.where[d]].darts)
        i, j = walk.index(d), walk.index(g.twin[d])
        walk = walk[i:] + walk[:i]
        j = (j - i) % len(walk)
        v_side = [x for x in walk[1:j] if g.origin[x] not in C]
        u_side = [x for x in walk[j + 1:] if g.origin[x] not in C]
        if v_side and u_side:
            return ReductionStep(
                Kind.DeleteEdgeInC, (u, v, g.origin[u_side[0]], g.origin[v_side[0]]),
                (d, u_side[0], v_side[0]), note="bridge",
            )
    return None


def _components(s: _Scan):
    g, C = s.g, s.C
    for v in sorted(C):
        if g.degree(v) == 0:
            return ReductionStep(Kind.DeleteIsolatedCVertex, (v,))
    if len(g.components()) > 1:
        raise IrreducibleTarget("target became disconnected", s.t.copy())
    return None


def _outer_edge(s: _Scan, d: int) -> bool:
    return s.where[d] == s.outer_idx or s.where[s.g.twin[d]] == s.outer_idx


def _digon_face(s: _Scan):
    g = s.g
    for idx, f in enumerate(s.faces):
        if idx == s.outer_idx or f.length != 2:
            continue
        for d in sorted(f.darts):
            if not _outer_edge(s, d):
                return ReductionStep(Kind.DeleteDigonEdge, (g.origin[d], g.head(d)), (d,))
    return None


def _long_face(s: _Scan):
    g, C = s.g, s.C
    for idx, f in enumerate(s.faces):
        if idx == s.outer_idx or f.length < 4:
            continue
        darts = f.darts
        L = len(darts)
        w = [g.origin[d] for d in darts]
        in_c = [i for i in range(L) if w[i] in C]
        if in_c:
            i = in_c[0]
            v1, v2, v3 = w[i - 1], w[i], w[(i + 1) % L]
            if v1 != v3:
                return ReductionStep(Kind.AddChord, (v1, v2, v3), (darts[i - 1], darts[(i + 1) % L]))
            if g.degree(v2) >= 2:
                return ReductionStep(Kind.SuppressParallelAtC, (v2, v1), (darts[i],), note="face")
            return ReductionStep(Kind.DeleteSmallCVertex, (v2,), note="face")
        for i in range(L):
            if w[i - 1] != w[(i + 1) % L]:
                return ReductionStep(Kind.AddChord, (w[i - 1], w[i], w[(i + 1) % L]), (darts[i - 1], darts[(i + 1) % L]))
    return None


def _small_c_vertex(s: _Scan):
    g = s.g
    for v in sorted(s.C):
        if g.degree(v) <= 3:
            nbrs = sorted(g.adjacent(v))
            if all(b in s.adj[a] for i, a in enumerate(nbrs) for b in nbrs[i + 1:]):
                return ReductionStep(Kind.DeleteSmallCVertex, (v,))
    return None


def _parallel_at_c(s: _Scan):
    g = s.g
    for v in sorted(s.C):
        seen = {}
        for d in sorted(g.darts_at(v)):
            w = g.head(d)
            if w in seen:
                return ReductionStep(Kind.SuppressParallelAtC, (v, w), (d,))
            seen[w] = d
    return None


def _low_vertex(s: _Scan):
    for v in sorted(s.classes):
        if not s.internal(v):
            continue
        a, b = s.classes[v]
        if a <= 3 or (a == 4 and b <= 3):
            return ReductionStep(Kind.MoveVertexToC, (v,), note=f"({a},{b})")
    return None


def _separating_cycle(s: _Scan):
    g, C = s.g, s.C
    facial = {frozenset(f.darts) for f in s.faces if f.length <= 3}
    base = None
    for a in sorted(g.vertices - C):
        by_head = {}
        for d in sorted(g.darts_at(a)):
            by_head.setdefault(g.head(d), []).append(d)
        for b, ds in sorted(by_head.items()):
            if b < a or b in C or len(ds) < 2:
                continue
            for i, d1 in enumerate(ds):
                for d2 in ds[i + 1:]:
                    Q = (d1, g.twin[d2])
                    if frozenset(Q) in facial or frozenset((d2, g.twin[d1])) in facial:
                        continue
                    base = base or measure(s.t)
                    if _split_shrinks(s.t, Q, base):
                        return ReductionStep(Kind.SplitOnCycle, (a, b), Q)
    for a in sorted(g.vertices - C):
        for d1 in sorted(g.darts_at(a)):
            b = g.head(d1)
            if b < a or b in C:
                continue
            for d2 in sorted(g.darts_at(b)):
                c = g.head(d2)
                if c <= a or c == b or c in C:
                    continue
                for d3 in sorted(g.darts_at(c)):
                    if g.head(d3) != a:
                        continue
                    Q = (d1, d2, d3)
                    if frozenset(Q) in facial or frozenset(g.twin[x] for x in Q) in facial:
                        continue
                    base = base or measure(s.t)
                    if _split_shrinks(s.t, Q, base):
                        return ReductionStep(Kind.SplitOnCycle, (a, b, c), Q)
    return None


def _split_children(t: Target, Q: tuple) -> list:
    g1, g2 = t.g.split_on_cycle(Q)
    ring = frozenset(t.g.origin[d] for d in Q)
    return [
        Target(g1, t.K, t.C & g1.vertices),
        Target(g2, ring, t.C & g2.vertices),
    ]


def _split_shrinks(t: Target, Q: tuple, base: tuple) -> bool:
    return all(measure(child) < base for child in _split_children(t, Q))


def _bfs_path(adj, start, through, goal, blocked=()):
    """Shortest path from ``start`` whose interior lies in ``through`` and that ends in ``goal``."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y in parent or y in blocked:
                continue
            if y in goal:
                path = [y, x]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if y in through:
                parent[y] = x
                queue.append(y)
    return None


def _move_ok(s: _Scan, verts) -> bool:
    P = set(verts)
    if len(P) != len(verts):
        return False
    for v in verts:
        if not s.internal(v):
            return False
        if len(s.adj[v] - s.C - P) > 4:
            return False
    return True


def _induced_path(s: _Scan, verts) -> bool:
    for i, v in enumerate(verts):
        for j in range(i + 2, len(verts)):
            if verts[j] in s.adj[v]:
                return False
    return True


def _class_sets(s: _Scan):
    low1, end2, six0, six1, five0 = set(), set(), set(), set(), set()
    for v, (a, b) in s.classes.items():
        if not s.internal(v):
            continue
        if a == 5 and b <= 1:
            low1.add(v)
        if a == 5 and b <= 2:
            end2.add(v)
        if a == 5 and b == 0:
            five0.add(v)
        if a == 6 and b == 0:
            six0.add(v)
        if a == 6 and b == 1:
            six1.add(v)
    return low1, end2, six0, six1, five0


def _path(s: _Scan):
    low1, end2, six0, _, _ = _class_sets(s)
    for v in sorted(low1):
        path = _bfs_path(s.adj, v, six0, end2 - {v})
        if path and _induced_path(s, path) and _move_ok(s, path):
            return ReductionStep(Kind.MovePathToC, tuple(path))
    return None


def _cycle(s: _Scan):
    _, end2, six0, _, _ = _class_sets(s)
    for z in sorted(end2):
        hubs = sorted(s.adj[z] & six0)
        for i, x in enumerate(hubs):
            for y in hubs[i + 1:]:
                if y in s.adj[x]:
                    continue
                blocked = (s.adj[z] - {y}) | {z}
                path = _bfs_path(s.adj, x, six0 - blocked, {y}, blocked)
                if path is None:
                    continue
                ring = tuple(path) + (z,)
                if _move_ok(s, ring) and _induced_cycle(s, ring):
                    return ReductionStep(Kind.MoveCycleToC, ring)
    return None


def _induced_cycle(s: _Scan, ring) -> bool:
    k = len(ring)
    if k < 4:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (j - i) in (1, k - 1)
            if (ring[j] in s.adj[ring[i]]) != adjacent:
                return False
    return True


def _path61(s: _Scan):
    low1, _, six0, six1, five0 = _class_sets(s)
    for y in sorted(six1):
        for z in sorted(s.adj[y] & five0):
            back = _bfs_path(s.adj, y, six0 - {z}, low1 - {z}, {z})
            if back is None:
                continue
            verts = tuple(reversed(back)) + (z,)
            if _move_ok(s, verts) and _induced_path(s, verts):
                return ReductionStep(Kind.Move61PathToC, verts)
    return None


_LATE = {"path": _path, "cycle": _cycle, "path61": _path61}


# ----------------------------------------------------------------------
# apply / reconstruct


def apply(t: Target, step: ReductionStep, inplace: bool = False) -> list:
    """Child target(s) of ``step``; two for a split, none for the base case."""
    if step.kind is Kind.BaseCase:
        return []
    if step.kind is Kind.SplitOnCycle:
        try:
            return _split_children(t, step.darts)
        except ValueError as exc:
            raise InapplicableStep(str(exc)) from exc
    t = t if inplace else t.copy()
    g, C = t.g, t.C
    try:
        if step.kind is Kind.DeleteEdgeInC:
            d = step.darts[0]
            if step.note == "bridge":
                du, dv = step.darts[1], step.darts[2]
                g.add_chord(g.face_of(du), du, dv)
            g.delete_edge(d)
        elif step.kind in (Kind.DeleteSmallCVertex, Kind.DeleteIsolatedCVertex):
            v = step.vertices[0]
            if v not in C:
                raise InapplicableStep(f"vertex {v} is not in C")
            g.delete_vertex(v)
            C.discard(v)
        elif step.kind in (Kind.DeleteDigonEdge, Kind.SuppressParallelAtC):
            g.delete_edge(step.darts[0])
        elif step.kind is Kind.AddChord:
            du, dv = step.darts
            g.add_chord(g.face_of(du), du, dv)
        elif step.kind in (Kind.MoveVertexToC, Kind.MovePathToC, Kind.MoveCycleToC, Kind.Move61PathToC):
            if set(step.vertices) & (C | t.K):
                raise InapplicableStep("moved vertices must lie outside K and C")
            C.update(step.vertices)
        elif step.kind is Kind.JoinComponents:
            u, v = step.vertices
            g.insert_edge(u, v, step.darts[0], step.darts[1])
        else:
            raise InapplicableStep(f"unknown step kind {step.kind}")
    except (KeyError, ValueError) as exc:
        if isinstance(exc, InapplicableStep):
            raise
        raise InapplicableStep(f"{step.describe()}: {exc}") from exc
    return [t]


def reconstruct(step: ReductionStep, child_orderings: list) -> list:
    """Lift the child ordering(s) of ``step`` to an ordering of the parent."""
    recipe = step.recipe
    if recipe == "base":
        return list(step.vertices)
    if recipe == "identity":
        return list(child_orderings[0])
    if recipe == "append":
        return list(child_orderings[0]) + list(step.vertices)
    if recipe == "append-swap-last":
        vs = list(step.vertices)
        return list(child_orderings[0]) + vs[:-2] + [vs[-1], vs[-2]]
    first, second = child_orderings
    ring = set(step.vertices)
    return list(first) + [v for v in second if v not in ring]


# ----------------------------------------------------------------------
# certification of appended vertices


@dataclass
class _Snapshot:
    adj: dict
    C: set
    classes: dict


def _snapshot(t: Target, verts) -> _Snapshot:
    g = t.g
    near = set(verts)
    for v in verts:
        near |= g.adjacent(v)
    adj = {x: g.adjacent(x) for x in near}
    cls = {}
    for w in near:
        if w not in t.C:
            a = b = 0
            for x in g.neighbors(w):
                if x in t.C:
                    b += 1
                else:
                    a += 1
            cls[w] = (a, b)
    return _Snapshot(adj, set(t.C) & set(adj).union(*adj.values()), cls)


def _check_appended(step: ReductionStep, snap: _Snapshot, order: list, target: Target) -> None:
    pos = {v: i for i, v in enumerate(order)}
    C, adj = snap.C, snap.adj
    for v in step.vertices:
        pv = pos[v]
        by_via = {}
        for w in adj[v]:
            fr = set()
            if w not in C and pos[w] < pv:
                fr.add(w)
            for u in adj[w]:
                if u == v or u in C or pos[u] >= pv or u in adj[v]:
                    continue
                if w in C:
                    fr.add(u)
                elif pos[w] > pv and not _shares_c(adj, C, v, u):
                    fr.add(u)
            by_via[w] = fr
            if w in C or pos[w] < pv:
                bound = 1
            else:
                bound = snap.classes[w][0] - 3
            if len(fr) > bound:
                raise CertificationFailed(
                    f"{step.kind.value}: vertex {v} has {len(fr)} friends via {w}, bound {bound}",
                    target, v, sorted(fr),
                )
        back = set().union(*by_via.values()) if by_via else set()
        if len(back) > DEGENERACY:
            raise CertificationFailed(
                f"{step.kind.value}: appended vertex {v} has back-set {sorted(back)}", target, v, sorted(back)
            )


def _shares_c(adj, C, v, u) -> bool:
    return any(w in C and u in adj.get(w, ()) for w in adj[v])


# ----------------------------------------------------------------------
# driver


def solve(t: Target, certify: bool = False, trace: list | None = None, late: tuple = LATE_SCAN,
          _depth: int = 0) -> list:
    """A valid ordering of ``V - C`` for target ``t`` (K first, back-sets <= 7).

    ``t`` is not modified.  With ``certify`` the lifted ordering is
    re-verified at every recursion level and each appended vertex is
    checked against the friend bounds it must satisfy.  ``trace``
    collects one :class:`TraceEntry` per applied step.
    """
    work = t.copy()
    lifts = []
    while True:
        step = find_reduction(work, late)
        if step.kind is Kind.BaseCase:
            order = reconstruct(step, [])
            break
        before = measure(work) if trace is not None else None
        if step.kind is Kind.SplitOnCycle:
            children = apply(work, step)
            if trace is not None:
                trace.append(TraceEntry(_depth, step, before, tuple(measure(c) for c in children)))
            sub = [solve(c, certify, trace, late, _depth + 1) for c in children]
            order = reconstruct(step, sub)
            break
        snap = _snapshot(work, step.vertices) if certify and step.recipe.startswith("append") else None
        apply(work, step, inplace=True)
        if trace is not None:
            trace.append(TraceEntry(_depth, step, before, (measure(work),)))
        lifts.append((step, snap))
    for step, snap in reversed(lifts):
        order = reconstruct(step, [order])
        if snap is not None:
            _check_appended(step, snap, order, t)
    if certify:
        try:
            verify(t.g, order, DEGENERACY, t.K, t.C)
        except OrderingError as exc:
            raise CertificationFailed(f"lifted ordering is not valid: {exc}", t.copy(),
                                      getattr(exc, "vertex", None), getattr(exc, "back", ())) from exc
    return order


def _ensure_recursion(n: int) -> None:
    need = 200 + 8 * n
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


@dataclass
class PlanarResult:
    ordering: list
    target: Target
    added: frozenset
    trace: list | None = None


def solve_plane(g: PlaneGraph, K0: Iterable = (), C: Iterable = (), certify: bool = True,
                trace: list | None = None, late: tuple = LATE_SCAN) -> PlanarResult:
    """Normalize ``(g, K0, C)``, solve it, and restrict back to ``V(g) - C``."""
    C = set(C)
    K0 = list(K0)
    norm = normalize(g, K0, C)
    _ensure_recursion(norm.target.g.n)
    order = solve(norm.target, certify=certify, trace=trace, late=late)
    result = [v for v in order if v not in norm.added]
    if certify:
        try:
            verify(g, result, DEGENERACY, K0, C)
        except OrderingError as exc:
            raise CertificationFailed(f"restricted ordering is not valid: {exc}", norm.target) from exc
    return PlanarResult(result, norm.target, norm.added, trace)


def col2_order_planar(g: PlaneGraph, certify: bool = True, trace: list | None = None) -> list:
    """Ordering of ``V(g)`` with every back-set of size at most 7."""
    return solve_plane(g, (), (), certify=certify, trace=trace).ordering
