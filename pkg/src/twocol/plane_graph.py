"""Dart-based plane multigraphs.

A plane graph is stored as a rotation system: every edge is a pair of
darts (half-edges) that are each other's ``twin``, every dart has an
``origin`` vertex, and ``rnext`` gives the next outgoing dart
counterclockwise around that origin.  Faces are the orbits of the face
successor ``phi(d) = rnext(twin(d))``.  Parallel edges are allowed, loops
are not.

Identifiers for new darts and vertices are always the smallest unused
nonnegative integers, so every mutation sequence is reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class PlaneGraphError(ValueError):
    """Base class for embedding errors."""


class MalformedEmbedding(PlaneGraphError):
    pass


class LoopPresent(PlaneGraphError):
    pass


class MissingElement(PlaneGraphError, KeyError):
    pass


class NotOnFace(PlaneGraphError):
    pass


class SameVertex(PlaneGraphError):
    pass


class FacialCycle(PlaneGraphError):
    pass


class NotACycle(PlaneGraphError):
    pass


class VertexInC(PlaneGraphError):
    pass


@dataclass(frozen=True)
class FaceWalk:
    """One face, as the cyclic dart sequence of its phi-orbit.

    The sequence starts at the smallest dart id of the orbit.
    """

    darts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    def __len__(self) -> int:
        return len(self.darts)

    def vertices(self, g: "PlaneGraph") -> tuple[int, ...]:
        return tuple(g.origin[d] for d in self.darts)


class _IdPool:
    """Smallest-unused-nonnegative-integer allocator."""

    def __init__(self, used: Iterable[int] = ()):
        self._used = set(used)
        self._next = max(self._used, default=-1) + 1
        self._free = [i for i in range(self._next) if i not in self._used]
        heapq.heapify(self._free)

    def take(self) -> int:
        while self._free:
            i = heapq.heappop(self._free)
            if i not in self._used:
                self._used.add(i)
                return i
        i = self._next
        self._next += 1
        self._used.add(i)
        return i

    def release(self, i: int) -> None:
        self._used.discard(i)
        heapq.heappush(self._free, i)

    def copy(self) -> "_IdPool":
        pool = _IdPool.__new__(_IdPool)
        pool._used = set(self._used)
        pool._next = self._next
        pool._free = list(self._free)
        return pool


class PlaneGraph:
    """A plane multigraph given by a rotation system.

    Use :meth:`build` (validated) or :meth:`from_faces` to construct one.
    Mutating methods work in place; call :meth:`copy` first when the
    original must survive.
    """

    def __init__(self):
        self.vertices: set[int] = set()
        self.origin: dict[int, int] = {}
        self.twin: dict[int, int] = {}
        self.rnext: dict[int, int] = {}
        self.rprev: dict[int, int] = {}
        self.outer_dart: int | None = None
        # one outgoing dart per vertex, None for isolated vertices
        self._anchor: dict[int, int | None] = {}
        self._dart_ids = _IdPool()
        self._vertex_ids = _IdPool()

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def build(
        cls,
        vertices: Iterable[int],
        darts: Iterable[Mapping[str, int] | Sequence[int]],
        outer_dart: int | None = None,
    ) -> "PlaneGraph":
        """Build and validate a graph from explicit dart records.

        Each dart record is either a mapping with keys ``id``, ``vertex``,
        ``twin``, ``rnext`` or a 4-tuple in that order.
        """
        g = cls()
        g.vertices = set(vertices)
        for rec in darts:
            if isinstance(rec, Mapping):
                d, v, t, r = rec["id"], rec["vertex"], rec["twin"], rec["rnext"]
            else:
                d, v, t, r = rec
            if d in g.origin:
                raise MalformedEmbedding(f"dart {d} listed twice")
            g.origin[d], g.twin[d], g.rnext[d] = v, t, r
        if outer_dart is None and g.origin:
            outer_dart = min(g.origin)
        g.outer_dart = outer_dart
        g._reindex()
        g.validate()
        return g

    @classmethod
    def from_faces(
        cls,
        faces: Iterable[Sequence[int]],
        outer: Sequence[int] | None = None,
    ) -> "PlaneGraph":
        """Build a simple plane graph from consistently oriented faces.

        Every directed edge ``(u, v)`` must occur in exactly one face,
        with ``v`` following ``u``.  ``outer`` selects the outer face by
        its vertex cycle; by default the outer face is the one through
        dart 0.
        """
        faces = [list(f) for f in faces]
        directed = sorted({(f[i], f[(i + 1) % len(f)]) for f in faces for i in range(len(f))})
        dart_of = {}
        for u, v in directed:
            if (u, v) not in dart_of:
                dart_of[(u, v)] = len(dart_of)
                if (v, u) not in dart_of:
                    dart_of[(v, u)] = len(dart_of)
        g = cls()
        for (u, v), d in dart_of.items():
            if u == v:
                raise LoopPresent(f"loop at vertex {u}")
            if (v, u) not in dart_of:
                raise MalformedEmbedding(f"edge {u}-{v} appears in one direction only")
            g.origin[d] = u
            g.twin[d] = dart_of[(v, u)]
            g.vertices.add(u)
        seen = set()
        for f in faces:
            for i in range(len(f)):
                u, v, w = f[i - 1], f[i], f[(i + 1) % len(f)]
                if (u, v) in seen:
                    raise MalformedEmbedding(f"directed edge {u}->{v} lies on two faces")
                seen.add((u, v))
                # phi(u->v) = v->w = rnext(v->u)
                g.rnext[dart_of[(v, u)]] = dart_of[(v, w)]
        g.outer_dart = 0
        if outer is not None:
            o = list(outer)
            g.outer_dart = dart_of[(o[0], o[1])]
        g._reindex()
        g.validate()
        return g

    @classmethod
    def from_rotation(cls, rotation: Mapping[int, Sequence[int]], outer: tuple[int, int] | None = None) -> "PlaneGraph":
        """Build a simple plane graph from counterclockwise neighbor lists.

        ``outer`` names a directed edge ``(u, v)`` whose dart lies on the
        outer face; by default dart 0 does.
        """
        pairs = sorted((u, v) for u, ws in rotation.items() for v in ws)
        dart_of = {p: i for i, p in enumerate(pairs)}
        records = []
        for u, ws in rotation.items():
            for i, v in enumerate(ws):
                if (v, u) not in dart_of:
                    raise MalformedEmbedding(f"edge {u}-{v} missing from the rotation of {v}")
                records.append((dart_of[(u, v)], u, dart_of[(v, u)], dart_of[(u, ws[(i + 1) % len(ws)])]))
        outer_dart = dart_of[outer] if outer is not None else (0 if records else None)
        return cls.build(rotation.keys(), records, outer_dart)

    def _reindex(self) -> None:
        self.rprev = {}
        for d, r in self.rnext.items():
            self.rprev[r] = d
        self._anchor = {v: None for v in self.vertices}
        for d in sorted(self.origin):
            v = self.origin[d]
            if self._anchor.get(v) is None:
                self._anchor[v] = d
        self._dart_ids = _IdPool(self.origin)
        self._vertex_ids = _IdPool(self.vertices)

    def copy(self) -> "PlaneGraph":
        g = PlaneGraph.__new__(PlaneGraph)
        g.vertices = set(self.vertices)
        g.origin = dict(self.origin)
        g.twin = dict(self.twin)
        g.rnext = dict(self.rnext)
        g.rprev = dict(self.rprev)
        g.outer_dart = self.outer_dart
        g._anchor = dict(self._anchor)
        g._dart_ids = self._dart_ids.copy()
        g._vertex_ids = self._vertex_ids.copy()
        return g

    # ------------------------------------------------------------------
    # validation

    def validate(self) -> None:
        """Check every structural invariant; raise on the first violation."""
        for d, t in self.twin.items():
            if t not in self.twin or self.twin[t] != d or t == d:
                raise MalformedEmbedding(f"twin is not a fixed-point-free involution at dart {d}")
            if self.origin[d] not in self.vertices:
                raise MalformedEmbedding(f"dart {d} starts at unknown vertex {self.origin[d]}")
            if self.origin[t] == self.origin[d]:
                raise LoopPresent(f"darts {d} and {t} form a loop at vertex {self.origin[d]}")
        if set(self.rnext) != set(self.origin) or set(self.rnext.values()) != set(self.origin):
            raise MalformedEmbedding("rnext is not a permutation of the darts")
        for d, r in self.rnext.items():
            if self.origin[r] != self.origin[d]:
                raise MalformedEmbedding(f"rnext({d}) = {r} leaves vertex {self.origin[d]}")
        per_vertex: dict[int, int] = {}
        for d, v in self.origin.items():
            per_vertex[v] = per_vertex.get(v, 0) + 1
        for v, count in per_vertex.items():
            start = self._anchor.get(v)
            if start is None or self.origin.get(start) != v:
                raise MalformedEmbedding(f"vertex {v} has no anchor dart")
            if sum(1 for _ in self._cycle(start)) != count:
                raise MalformedEmbedding(f"rotation at vertex {v} is not a single cycle")
        if self.origin and self.outer_dart not in self.origin:
            raise MalformedEmbedding(f"outer dart {self.outer_dart} does not exist")
        for comp_vertices, comp_darts in self._components_with_darts():
            if not comp_darts:
                continue
            faces = len(self._orbits(comp_darts))
            chi = len(comp_vertices) - len(comp_darts) // 2 + faces
            if chi != 2:
                raise MalformedEmbedding(
                    f"component of vertex {min(comp_vertices)} has Euler characteristic {chi}, not 2"
                )

    # ------------------------------------------------------------------
    # queries

    def _cycle(self, start: int) -> Iterator[int]:
        d = start
        while True:
            yield d
            d = self.rnext[d]
            if d == start:
                return

    def darts_at(self, v: int) -> list[int]:
        """Outgoing darts of ``v`` in counterclockwise order."""
        a = self._anchor.get(v)
        if a is None:
            if v not in self.vertices:
                raise MissingElement(f"no vertex {v}")
            return []
        return list(self._cycle(a))

    def head(self, d: int) -> int:
        return self.origin[self.twin[d]]

    def phi(self, d: int) -> int:
        return self.rnext[self.twin[d]]

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of ``v`` in rotation order, repeated per parallel edge."""
        return [self.origin[self.twin[d]] for d in self.darts_at(v)]

    def adjacent(self, v: int) -> set[int]:
        return set(self.neighbors(v))

    def degree(self, v: int) -> int:
        return len(self.darts_at(v))

    def edges(self) -> list[int]:
        """One representative dart (the smaller id) per edge."""
        return sorted(d for d in self.origin if d < self.twin[d])

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.origin) // 2

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for d, v in self.origin.items():
            adj[v].add(self.origin[self.twin[d]])
        return adj

    def face_of(self, d: int) -> FaceWalk:
        rnext, twin = self.rnext, self.twin
        orbit = [d]
        x = rnext[twin[d]]
        while x != d:
            orbit.append(x)
            x = rnext[twin[x]]
        i = orbit.index(min(orbit))
        return FaceWalk(tuple(orbit[i:] + orbit[:i]))

    def _orbits(self, darts: Iterable[int]) -> list[FaceWalk]:
        # darts are visited in increasing order, so each orbit starts at its minimum
        rnext, twin = self.rnext, self.twin
        seen: set[int] = set()
        out = []
        for d in sorted(darts):
            if d in seen:
                continue
            orbit = [d]
            x = rnext[twin[d]]
            while x != d:
                orbit.append(x)
                x = rnext[twin[x]]
            seen.update(orbit)
            out.append(FaceWalk(tuple(orbit)))
        return out

    def faces(self) -> list[FaceWalk]:
        """All phi-orbits, sorted by their smallest dart."""
        return self._orbits(self.origin)

    def face_index(self) -> tuple[list[FaceWalk], dict[int, int]]:
        """Faces plus a dart -> face position map."""
        faces = self.faces()
        where = {}
        for i, f in enumerate(faces):
            for d in f.darts:
                where[d] = i
        return faces, where

    def outer_face(self) -> FaceWalk | None:
        if self.outer_dart is None:
            return None
        return self.face_of(self.outer_dart)

    def _components_with_darts(self) -> list[tuple[set[int], list[int]]]:
        seen: set[int] = set()
        out = []
        for s in sorted(self.vertices):
            if s in seen:
                continue
            comp, darts, stack = {s}, [], [s]
            seen.add(s)
            origin, twin, rnext = self.origin, self.twin, self.rnext
            while stack:
                v = stack.pop()
                a = self._anchor.get(v)
                if a is None:
                    continue
                d = a
                while True:
                    darts.append(d)
                    w = origin[twin[d]]
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
                    d = rnext[d]
                    if d == a:
                        break
            out.append((comp, darts))
        return out

    def components(self) -> list[set[int]]:
        return [c for c, _ in self._components_with_darts()]

    def euler_check(self) -> bool:
        """|V| - |E| + |F| == 1 + q, with one shared outer face.

        Faces are counted as phi-orbits, where every component carries its
        own outer orbit and isolated vertices carry none; both are
        corrected for here.
        """
        comps = self._components_with_darts()
        with_edges = sum(1 for _, ds in comps if ds)
        plane_faces = len(self.faces()) - with_edges + 1
        return self.n - self.m + plane_faces == 1 + len(comps)

    def vertex_class(self, C: Iterable[int], v: int) -> tuple[int, int]:
        """``(a, b)``: edge counts from ``v`` to vertices outside / inside C."""
        C = C if isinstance(C, (set, frozenset)) else set(C)
        if v in C:
            raise VertexInC(f"vertex {v} belongs to C")
        a = b = 0
        for w in self.neighbors(v):
            if w in C:
                b += 1
            else:
                a += 1
        return a, b

    # ------------------------------------------------------------------
    # mutation primitives

    def add_vertex(self) -> int:
        v = self._vertex_ids.take()
        self.vertices.add(v)
        self._anchor[v] = None
        return v

    def _splice_in(self, new: int, before: int | None, v: int) -> None:
        if before is None:
            self.rnext[new] = new
            self.rprev[new] = new
            self._anchor[v] = new
            return
        p = self.rprev[before]
        self.rnext[p] = new
        self.rprev[new] = p
        self.rnext[new] = before
        self.rprev[before] = new

    def insert_edge(self, u: int, v: int, before_u: int | None = None, before_v: int | None = None) -> tuple[int, int]:
        """Add an edge ``u``-``v``; return its darts ``(u->v, v->u)``.

        Each new dart is placed immediately before the given dart in the
        rotation of its origin, i.e. inside the face that contains the
        given dart.  Pass ``None`` only for an isolated endpoint.
        """
        if u == v:
            raise SameVertex(f"edge {u}-{u} would be a loop")
        for x, b in ((u, before_u), (v, before_v)):
            if x not in self.vertices:
                raise MissingElement(f"no vertex {x}")
            if b is None and self._anchor[x] is not None:
                raise NotOnFace(f"vertex {x} is not isolated; a corner dart is required")
            if b is not None and self.origin.get(b) != x:
                raise NotOnFace(f"dart {b} does not start at vertex {x}")
        x = self._dart_ids.take()
        y = self._dart_ids.take()
        self.origin[x], self.origin[y] = u, v
        self.twin[x], self.twin[y] = y, x
        self._splice_in(x, before_u, u)
        self._splice_in(y, before_v, v)
        if self.outer_dart is None:
            self.outer_dart = min(x, y)
        return x, y

    def add_chord(self, face: FaceWalk, d_u: int, d_v: int) -> tuple[int, int]:
        """Split ``face`` by a new edge from ``origin(d_u)`` to ``origin(d_v)``.

        Returns the new darts ``(x, y)`` with ``x`` leaving ``origin(d_u)``.
        Afterwards ``y, d_u, ...`` and ``x, d_v, ...`` are the two new faces.
        """
        darts = set(face.darts)
        if d_u not in darts or d_v not in darts:
            raise NotOnFace(f"darts {d_u}, {d_v} are not both on the face")
        u, v = self.origin[d_u], self.origin[d_v]
        if u == v:
            raise SameVertex(f"chord would be a loop at vertex {u}")
        if self.phi(d_u) == d_v or self.phi(d_v) == d_u:
            raise SameVertex("chord ends are consecutive corners; it would bound a face of length 2")
        return self.insert_edge(u, v, d_u, d_v)

    def _remove_dart(self, d: int) -> None:
        v = self.origin[d]
        p, n = self.rprev[d], self.rnext[d]
        if p == d:
            self._anchor[v] = None
        else:
            self.rnext[p] = n
            self.rprev[n] = p
            if self._anchor[v] == d:
                self._anchor[v] = n
        del self.origin[d], self.twin[d], self.rnext[d], self.rprev[d]
        self._dart_ids.release(d)

    def delete_edge(self, e: int) -> "PlaneGraph":
        """Delete the edge containing dart ``e`` (in place; returns self)."""
        if e not in self.origin:
            raise MissingElement(f"no dart {e}")
        t = self.twin[e]
        survivors: list[int] = []
        if self.outer_dart in (e, t):
            survivors = [d for d in self.face_of(self.outer_dart).darts if d not in (e, t)]
        self._remove_dart(e)
        self._remove_dart(t)
        if self.outer_dart in (e, t):
            self._reanchor_outer(survivors)
        return self

    def _reanchor_outer(self, survivors: list[int]) -> None:
        if survivors:
            self.outer_dart = min(self.face_of(survivors[0]).darts)
        elif self.origin:
            self.outer_dart = min(self.origin)
        else:
            self.outer_dart = None

    def delete_vertex(self, v: int) -> "PlaneGraph":
        """Delete ``v`` and its incident edges (in place; returns self)."""
        if v not in self.vertices:
            raise MissingElement(f"no vertex {v}")
        mine = set(self.darts_at(v)) | {self.twin[d] for d in self.darts_at(v)}
        survivors: list[int] = []
        if self.outer_dart in mine:
            survivors = [d for d in self.face_of(self.outer_dart).darts if d not in mine]
        for d in self.darts_at(v):
            if d in self.origin:
                t = self.twin[d]
                self._remove_dart(d)
                self._remove_dart(t)
        self.vertices.discard(v)
        del self._anchor[v]
        self._vertex_ids.release(v)
        if self.outer_dart in mine:
            self._reanchor_outer(survivors)
        return self

    # ------------------------------------------------------------------
    # restriction / splitting

    def restrict(self, keep_darts: set[int], outer_dart: int) -> "PlaneGraph":
        """Sub-map on an edge set closed under twin; rotations are inherited."""
        g = PlaneGraph()
        for d in keep_darts:
            g.origin[d] = self.origin[d]
            g.twin[d] = self.twin[d]
            r = self.rnext[d]
            while r not in keep_darts:
                r = self.rnext[r]
            g.rnext[d] = r
        g.vertices = set(g.origin.values())
        g.outer_dart = outer_dart
        g._reindex()
        return g

    def cycle_sides(self, Q: Sequence[int]) -> tuple[set[int], set[int]]:
        """Partition the faces (as dart sets) into the two sides of cycle ``Q``.

        ``Q`` is a closed walk given by darts through distinct vertices.
        Returns ``(outside, inside)`` where ``outside`` holds every dart
        whose face lies on the same side as the outer face.
        """
        k = len(Q)
        if k < 2 or any(d not in self.origin for d in Q):
            raise NotACycle("cycle needs at least two existing darts")
        for i in range(k):
            if self.head(Q[i]) != self.origin[Q[(i + 1) % k]]:
                raise NotACycle(f"darts {Q[i]} and {Q[(i + 1) % k]} do not chain")
        if len({self.origin[d] for d in Q}) != k or len({min(d, self.twin[d]) for d in Q}) != k:
            raise NotACycle("cycle repeats a vertex or an edge")
        faces, where = self.face_index()
        parent = list(range(len(faces)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        cut = set(Q) | {self.twin[d] for d in Q}
        for d in self.origin:
            if d not in cut:
                a, b = find(where[d]), find(where[self.twin[d]])
                if a != b:
                    parent[a] = b
        root = find(where[self.outer_dart])
        outside = {d for d in self.origin if find(where[d]) == root}
        inside = set(self.origin) - outside
        if not inside:
            raise NotACycle("cycle does not separate the faces of its component")
        return outside, inside

    def split_on_cycle(self, Q: Sequence[int]) -> tuple["PlaneGraph", "PlaneGraph"]:
        """Split along a non-facial 2- or 3-cycle given as a dart sequence.

        Returns ``(G1, G2)``: ``G1`` is the closure of the side containing
        the outer face (the other side collapses to one face bounded by Q);
        ``G2`` is the closure of the other side with Q bounding its outer
        face.  Dart ids are preserved in both.
        """
        if len(Q) not in (2, 3):
            raise NotACycle("only cycles of length 2 or 3 are split")
        outside, inside = self.cycle_sides(Q)
        cut = set(Q) | {self.twin[d] for d in Q}
        for side in (outside, inside):
            side_faces = {min(self.face_of(d).darts) for d in side}
            if len(side_faces) == 1 and len(side) == len(Q):
                raise FacialCycle("cycle bounds a face")
        keep1 = outside | cut
        keep2 = inside | cut
        g1 = self.restrict(keep1, self.outer_dart)
        g2_outer = min(d for d in cut if d in outside)
        g2 = self.restrict(keep2, g2_outer)
        return g1, g2

    # ------------------------------------------------------------------

    def canonical(self) -> tuple:
        """Relabeling-invariant fingerprint of the rooted map.

        Darts and vertices are renumbered in breadth-first order from the
        outer dart; two graphs with equal fingerprints are isomorphic as
        rooted plane maps.
        """
        if self.outer_dart is None:
            return (len(self.vertices),)
        label = {self.outer_dart: 0}
        queue = [self.outer_dart]
        i = 0
        while i < len(queue):
            d = queue[i]
            i += 1
            for x in (self.twin[d], self.rnext[d]):
                if x not in label:
                    label[x] = len(label)
                    queue.append(x)
        vlabel: dict[int, int] = {}
        for d in queue:
            vlabel.setdefault(self.origin[d], len(vlabel))
        return (
            len(self.vertices) - len(vlabel),
            tuple((label[self.twin[d]], label[self.rnext[d]], vlabel[self.origin[d]]) for d in queue),
        )

    def __repr__(self) -> str:
        # counts only: repr must not walk faces of a half-built embedding
        return f"PlaneGraph(n={len(self.vertices)}, darts={len(self.origin)})"
