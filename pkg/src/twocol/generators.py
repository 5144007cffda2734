"""Named plane graphs, kleetopes, seeded random triangulations, connectivity."""

from __future__ import annotations

import itertools
import random
from collections import deque

import numpy as np

from .plane_graph import FaceWalk, PlaneGraph


class UnknownFamily(ValueError):
    pass


_PHI = (1 + 5 ** 0.5) / 2


def _polyhedron_coords(name: str) -> np.ndarray:
    if name == "tetrahedron":
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif name == "octahedron":
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    elif name == "icosahedron":
        pts = []
        for a, b in itertools.product((1, -1), repeat=2):
            pts += [(0, a, b * _PHI), (a, b * _PHI, 0), (b * _PHI, 0, a)]
    elif name == "dodecahedron":
        pts = list(itertools.product((1, -1), repeat=3))
        for a, b in itertools.product((1, -1), repeat=2):
            pts += [(0, a / _PHI, b * _PHI), (a / _PHI, b * _PHI, 0), (b * _PHI, 0, a / _PHI)]
    else:
        raise UnknownFamily(name)
    return np.array(pts, dtype=float)


def convex_polyhedron(points: np.ndarray) -> PlaneGraph:
    """Plane graph of a centered convex polyhedron whose edges are its shortest chords.

    Neighbors are sorted counterclockwise as seen from outside, which
    gives a consistent rotation system.
    """
    pts = np.asarray(points, dtype=float)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    np.fill_diagonal(dist, np.inf)
    edge_len = dist.min()
    rotation = {}
    for v, p in enumerate(pts):
        nbrs = np.flatnonzero(np.isclose(dist[v], edge_len))
        normal = p / np.linalg.norm(p)
        ref = pts[nbrs[0]] - p
        e1 = ref - ref.dot(normal) * normal
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        angles = [np.arctan2((pts[w] - p).dot(e2), (pts[w] - p).dot(e1)) % (2 * np.pi) for w in nbrs]
        rotation[v] = [int(w) for _, w in sorted(zip(angles, nbrs))]
    return PlaneGraph.from_rotation(rotation)


def double_wheel(n: int) -> PlaneGraph:
    """Cycle ``0..n-1`` plus apexes ``n`` (one side) and ``n + 1`` (other side)."""
    if n < 3:
        raise ValueError("double wheel needs a cycle of length at least 3")
    top, bottom = n, n + 1
    faces = []
    for i in range(n):
        j = (i + 1) % n
        faces.append((top, i, j))
        faces.append((bottom, j, i))
    return PlaneGraph.from_faces(faces)


def digon() -> PlaneGraph:
    return PlaneGraph.build([0, 1], [(0, 0, 1, 2), (1, 1, 0, 3), (2, 0, 3, 0), (3, 1, 2, 1)], 0)


def triangle() -> PlaneGraph:
    return PlaneGraph.from_faces([(0, 1, 2), (0, 2, 1)])


def named(family: str, n: int | None = None) -> PlaneGraph:
    """One of the built-in families; ``n`` is the rim length of ``double_wheel``."""
    if family == "triangle":
        return triangle()
    if family == "digon":
        return digon()
    if family == "double_wheel":
        return double_wheel(5 if n is None else n)
    if family in ("tetrahedron", "octahedron", "icosahedron", "dodecahedron"):
        return convex_polyhedron(_polyhedron_coords(family))
    raise UnknownFamily(f"unknown family {family!r}")


def stellate(g: PlaneGraph, face: FaceWalk) -> int:
    """Insert a new vertex inside ``face`` joined to each of its corners (in place)."""
    z = g.add_vertex()
    last = None
    for d in face.darts:
        _, last = g.insert_edge(g.origin[d], z, d, last)
    return z


def kleetope(g: PlaneGraph) -> PlaneGraph:
    """Stellate every face, outer one included.

    The outer face of the result is the triangle through the smallest dart.
    """
    h = g.copy()
    for f in g.faces():
        stellate(h, f)
    h.outer_dart = min(h.origin)
    return h


def subdivide(g: PlaneGraph) -> PlaneGraph:
    """Split every edge at its midpoint and every triangle into four.

    Applied to the icosahedron this gives geodesic spheres: all degrees
    are 5 or 6, which makes them good stress tests for the path and
    cycle reductions.  The outer face is a corner triangle of the old
    outer face.
    """
    if any(f.length != 3 for f in g.faces()):
        raise ValueError("subdivision needs every face to be a triangle")
    mid = {}
    nxt = max(g.vertices) + 1
    for d in g.edges():
        mid[d] = mid[g.twin[d]] = nxt
        nxt += 1
    faces = []
    for f in g.faces():
        a, b, c = f.vertices(g)
        ab, bc, ca = (mid[d] for d in f.darts)
        faces += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
    outer = g.outer_face()
    a = g.origin[outer.darts[0]]
    return PlaneGraph.from_faces(faces, outer=(a, mid[outer.darts[0]], mid[outer.darts[2]]))


def random_triangulation(n: int, seed: int = 0, flips: int = 0) -> PlaneGraph:
    """Stacked triangulation on ``n`` vertices followed by random diagonal flips.

    Vertices go one at a time into a uniformly chosen inner face; flips
    never touch the outer triangle and keep the graph simple.
    """
    if n < 3:
        raise ValueError("a triangulation needs at least 3 vertices")
    rng = random.Random(seed)
    g = triangle()
    outer = set(g.outer_face().darts)
    inner = [d for d in g.faces() if d.darts[0] not in outer][0].darts[0]
    reps = [inner]
    for _ in range(n - 3):
        i = rng.randrange(len(reps))
        f = g.face_of(reps[i])
        stellate(g, f)
        reps[i:i + 1] = list(f.darts)
    for _ in range(flips):
        flip_random_edge(g, rng)
    return g


def flip_random_edge(g: PlaneGraph, rng: random.Random) -> bool:
    """Try one random diagonal flip; return whether it happened."""
    outer = set(g.outer_face().darts)
    candidates = [d for d in g.edges() if d not in outer and g.twin[d] not in outer]
    if not candidates:
        return False
    d = rng.choice(candidates)
    t = g.twin[d]
    u, v = g.origin[d], g.origin[t]
    fd, ft = g.face_of(d), g.face_of(t)
    if fd.length != 3 or ft.length != 3 or g.degree(u) <= 3 or g.degree(v) <= 3:
        return False
    q = g.twin[g.rprev[d]]      # x -> u
    s = g.twin[g.rprev[t]]      # y -> v
    x, y = g.origin[q], g.origin[s]
    if x == y or y in g.adjacent(x):
        return False
    g.delete_edge(d)
    g.add_chord(g.face_of(q), q, s)
    return True


def is_triangulation(g: PlaneGraph) -> bool:
    """Simple, connected, and every face (outer included) has length 3."""
    if len(g.components()) != 1:
        return False
    if any(f.length != 3 for f in g.faces()):
        return False
    return all(len(g.adjacent(v)) == g.degree(v) for v in g.vertices)


def _max_disjoint_paths(adj: dict, s, t, cap: int) -> int:
    """Internally vertex-disjoint s-t paths (capped), by unit-capacity augmentation."""
    # vertex v splits into (v, 0) -> (v, 1); edges run (v, 1) -> (w, 0)
    flow: dict = {}

    def residual(a, b):
        return (1 if _has_arc(a, b) else 0) - flow.get((a, b), 0) + flow.get((b, a), 0)

    def _has_arc(a, b):
        (x, side_a), (y, side_b) = a, b
        if x == y:
            return side_a == 0 and side_b == 1 and x not in (s, t)
        return side_a == 1 and side_b == 0 and y in adj[x]

    def arcs_from(a):
        x, side = a
        out = [(x, 1 - side)]
        out += [(w, 0) for w in adj[x]] if side == 1 else [(w, 1) for w in adj[x]]
        return out

    source, sink = (s, 1), (t, 0)
    total = 0
    while total < cap:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in arcs_from(a):
                if b not in parent and residual(a, b) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            if flow.get((b, a), 0) > 0:
                flow[(b, a)] -= 1
            else:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            b = a
        total += 1
    return total


def vertex_connectivity(g) -> int:
    """Minimum number of vertices whose removal disconnects a simple graph.

    Computed as the minimum, over non-adjacent pairs, of the number of
    internally disjoint paths (Menger); complete graphs give ``n - 1``.
    """
    adj = g.adjacency() if isinstance(g, PlaneGraph) else {v: set(ws) for v, ws in g.items()}
    verts = sorted(adj)
    n = len(verts)
    if n <= 1:
        return 0
    best = n - 1
    for i, s in enumerate(verts):
        for t in verts[i + 1:]:
            if t not in adj[s]:
                best = min(best, _max_disjoint_paths(adj, s, t, best))
                if best == 0:
                    return 0
    return best


def degree_five_nonadjacent(g: PlaneGraph) -> bool:
    fives = {v for v in g.vertices if g.degree(v) == 5}
    return all(not (g.adjacent(v) & fives) for v in fives)
