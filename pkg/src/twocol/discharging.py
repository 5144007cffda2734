"""Integer discharging ledger for targets.

All charges are in units of one tenth, so every amount is an integer:
a vertex starts with ``10 deg(v) - 60``, each vertex outside C sends 5
along every edge into C, and then rules R1 to R3 move charge from big
vertices to internal ``(5, <=1)``-vertices.  On a triangulated target
the total is ``-60 - 20|K|`` because ``|E| = 3|V| - 3 - |K|``; the
audit checks that identity and lists every vertex whose final charge
falls below the bound a minimal counterexample would guarantee.  Those
vertices point at the configurations a reduction scan should have
found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructive import Target
from .plane_graph import PlaneGraph


class NotTriangulated(ValueError):
    pass


R1_AMOUNT = 2
R2_AMOUNT = 1
R3_AMOUNT = 1
C_EDGE_AMOUNT = 5
K_FLOOR = -30


@dataclass(frozen=True)
class Transfer:
    rule: str                   # "CT", "R1", "R2" or "R3"
    src: int
    dst: int
    amount: int
    witness: tuple = ()         # R3: (hub, v1, ..., vk)


@dataclass(frozen=True)
class VertexRole:
    cls: tuple | None           # (a, b); None for C-vertices
    in_K: bool
    in_C: bool
    big: bool
    internal: bool


@dataclass(frozen=True)
class FanPath:
    hub: int
    path: tuple                 # v1, ..., vk

    @property
    def departs(self) -> tuple:
        return (self.path[1], self.hub)

    @property
    def arrives(self) -> tuple:
        return (self.path[-2], self.hub)


@dataclass
class ChargeLedger:
    c0_raw: dict = field(default_factory=dict)
    c0: dict = field(default_factory=dict)
    final: dict = field(default_factory=dict)
    roles: dict = field(default_factory=dict)
    transfers: list = field(default_factory=list)
    fans: list = field(default_factory=list)
    departures: dict = field(default_factory=dict)   # v -> set of pairs
    arrivals: dict = field(default_factory=dict)     # v -> set of pairs
    heavy: set = field(default_factory=set)          # (v1, frozenset({v2, x}))


def initial_charges(t: Target) -> ChargeLedger:
    g = t.g
    led = ChargeLedger()
    for v in sorted(g.vertices):
        led.c0_raw[v] = 10 * g.degree(v) - 60
    return led


def c_transfer(led: ChargeLedger, t: Target) -> ChargeLedger:
    """Every vertex outside C sends 5 per edge (with multiplicity) to C."""
    g, C = t.g, t.C
    led.c0 = dict(led.c0_raw)
    for v in sorted(g.vertices):
        if v in C:
            continue
        for w in g.neighbors(v):
            if w in C:
                led.c0[v] -= C_EDGE_AMOUNT
                led.c0[w] += C_EDGE_AMOUNT
                led.transfers.append(Transfer("CT", v, w, C_EDGE_AMOUNT))
    for v in sorted(g.vertices):
        if v in C:
            led.roles[v] = VertexRole(None, False, True, False, True)
            continue
        cls = g.vertex_class(C, v)
        in_k = v in t.K
        led.roles[v] = VertexRole(cls, in_k, False, in_k or led.c0[v] > 0, not in_k)
    return led


def _is(role: VertexRole, a: int, b_max: int, b_min: int = 0) -> bool:
    return role.internal and not role.in_C and role.cls[0] == a and b_min <= role.cls[1] <= b_max


def _fans(g: PlaneGraph, roles: dict) -> list:
    """All R3 witness fans, each found by walking away from its receiver."""
    out = []
    seen = set()
    for x in sorted(g.vertices):
        rx = roles[x]
        if rx.in_C or not (rx.big or _is(rx, 6, 0)):
            continue
        darts = g.darts_at(x)
        m = len(darts)
        for j, dj in enumerate(darts):
            vk = g.head(dj)
            if not _is(roles[vk], 5, 1):
                continue
            for step in (1, -1):
                path = [vk]
                i = j
                while True:
                    # the face between darts[i] and darts[i + step]
                    a, b = (darts[i], darts[(i + step) % m])
                    face_dart = a if step == -1 else b
                    if g.face_of(face_dart).length != 3:
                        break
                    i = (i + step) % m
                    u = g.head(darts[i])
                    if u in path or u == x or i == j:
                        break
                    path.append(u)
                    if _is(roles[u], 6, 0):
                        continue
                    if roles[u].big and len(path) >= 3:
                        fan = FanPath(x, tuple(reversed(path)))
                        if fan not in seen:
                            seen.add(fan)
                            out.append(fan)
                    break
    return out


def apply_rules(t: Target, strict: bool = True) -> ChargeLedger:
    """Full ledger: initial charges, C-transfer, then R1, R2 and R3.

    ``strict`` requires every non-outer face to be a triangle; otherwise
    R3 fans are only followed across triangular faces.
    """
    g = t.g
    if strict:
        outer = g.outer_dart
        outer_face = set(g.face_of(outer).darts) if outer is not None else set()
        for f in g.faces():
            if f.length != 3 and not (set(f.darts) & outer_face):
                raise NotTriangulated(f"face through dart {f.darts[0]} has length {f.length}")
    led = c_transfer(initial_charges(t), t)
    roles = led.roles
    led.final = dict(led.c0)
    for v in sorted(g.vertices):
        if not roles[v].big:
            continue
        for w in g.neighbors(v):
            rw = roles[w]
            if _is(rw, 5, 0):
                led.transfers.append(Transfer("R1", v, w, R1_AMOUNT))
                led.final[v] -= R1_AMOUNT
                led.final[w] += R1_AMOUNT
            elif _is(rw, 5, 1, 1):
                led.transfers.append(Transfer("R2", v, w, R2_AMOUNT))
                led.final[v] -= R2_AMOUNT
                led.final[w] += R2_AMOUNT
    led.fans = _fans(g, roles)
    for fan in led.fans:
        v1, vk = fan.path[0], fan.path[-1]
        led.transfers.append(Transfer("R3", v1, vk, R3_AMOUNT, (fan.hub,) + fan.path))
        led.final[v1] -= R3_AMOUNT
        led.final[vk] += R3_AMOUNT
        led.departures.setdefault(v1, set()).add(fan.departs)
        led.arrivals.setdefault(vk, set()).add(fan.arrives)
    for v, pairs in led.departures.items():
        for (y, x) in pairs:
            if (x, y) in pairs:
                led.heavy.add((v, frozenset((x, y))))
    return led


@dataclass
class AuditReport:
    n: int
    K: int
    total_raw: int
    total_c0: int
    total_final: int
    triangulated: bool
    expected_total: int | None
    conserved: bool
    identity_holds: bool | None
    violations: list = field(default_factory=list)     # (vertex, rule, charge, bound)
    arrival_gaps: list = field(default_factory=list)   # (vertex, (u1, x))
    heavy: list = field(default_factory=list)          # (v1, (x, y))
    heavy_violations: list = field(default_factory=list)
    ledger: ChargeLedger | None = None

    @property
    def ok(self) -> bool:
        return self.conserved and self.identity_holds is not False and not self.heavy_violations

    def lines(self) -> list:
        out = [
            f"n={self.n}",
            f"K={self.K}",
            f"total_raw={self.total_raw}",
            f"total_c0={self.total_c0}",
            f"total={self.total_final}",
            f"triangulated={int(self.triangulated)}",
            f"expected_total={'' if self.expected_total is None else self.expected_total}",
            f"conserved={int(self.conserved)}",
            f"identity={'' if self.identity_holds is None else int(self.identity_holds)}",
            f"violations={len(self.violations)}",
            f"arrival_gaps={len(self.arrival_gaps)}",
            f"heavy_edges={len(self.heavy)}",
            f"heavy_violations={len(self.heavy_violations)}",
        ]
        for v, rule, c, bound in self.violations:
            out.append(f"violation={v}:{rule}:{c}<{bound}")
        return out


def is_triangulated(t: Target) -> bool:
    """Connected, every non-outer face a triangle, and the outer face of length |K|."""
    g = t.g
    if g.outer_dart is None or len(g.components()) != 1:
        return False
    faces, where = g.face_index()
    o = where[g.outer_dart]
    if faces[o].length != len(t.K):
        return False
    return all(f.length == 3 for i, f in enumerate(faces) if i != o)


def audit(t: Target) -> AuditReport:
    """Charge totals, the conservation identity, and per-vertex bound checks."""
    tri = is_triangulated(t)
    led = apply_rules(t, strict=False)
    g = t.g
    raw = sum(led.c0_raw.values())
    c0 = sum(led.c0.values())
    fin = sum(led.final.values())
    expected = -60 - 20 * len(t.K) if tri else None
    rep = AuditReport(
        n=g.n, K=len(t.K), total_raw=raw, total_c0=c0, total_final=fin, triangulated=tri,
        expected_total=expected, conserved=(raw == c0 == fin),
        identity_holds=(raw == expected) if tri else None, ledger=led,
    )
    for v in sorted(g.vertices):
        r = led.roles[v]
        if r.in_C:
            continue
        c = led.final[v]
        a, b = r.cls
        if r.in_K and c < K_FLOOR:
            rep.violations.append((v, "K", c, K_FLOOR))
        if r.big and c < 8 * a + 7 * b - 60:
            rep.violations.append((v, "big", c, 8 * a + 7 * b - 60))
        if r.internal and c < 0:
            rep.violations.append((v, "internal", c, 0))
    for v in sorted(g.vertices):
        if not _is(led.roles[v], 5, 1):
            continue
        got = led.arrivals.get(v, set())
        for d in g.darts_at(v):
            f = g.face_of(d)
            if f.length != 3:
                continue
            u1, x = g.head(d), g.head(g.phi(d))
            for uu, xx in ((u1, x), (x, u1)):
                if _is(led.roles[uu], 6, 0) and (uu, xx) not in got:
                    rep.arrival_gaps.append((v, (uu, xx)))
    for v1, edge in sorted(led.heavy, key=lambda h: (h[0], sorted(h[1]))):
        pair = tuple(sorted(edge))
        rep.heavy.append((v1, pair))
        if any(_is(led.roles[y], 5, 1) for y in pair):
            rep.heavy_violations.append((v1, pair))
    rep.arrival_gaps = sorted(set(rep.arrival_gaps))
    return rep


def target_of(g: PlaneGraph, K=None, C=()) -> Target:
    """Wrap a plane graph as a target; K defaults to the outer face vertices."""
    if K is None:
        outer = g.outer_face()
        K = set(outer.vertices(g)) if outer is not None else set()
    return Target(g, frozenset(K), set(C))
