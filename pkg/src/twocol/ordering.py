"""Back-sets, two-degeneracy checks and the friend relation.

For an ordering of ``V - C`` the back-set of ``v`` holds every earlier
vertex ``u`` (outside C) such that ``uv`` is an edge, or ``u`` and ``v``
share a neighbor outside C placed after ``v``, or they share a neighbor
in C.  With ``C`` empty this is the usual two-coloring back-set.

Graphs may be given as a :class:`~twocol.plane_graph.PlaneGraph`, a
networkx graph, or a mapping from vertex to neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class OrderingError(ValueError):
    pass


class DomainMismatch(OrderingError):
    pass


class KPrefixViolation(OrderingError):
    def __init__(self, k_vertex, earlier):
        super().__init__(f"K-vertex {k_vertex} is preceded by non-K vertex {earlier}")
        self.k_vertex = k_vertex
        self.earlier = earlier


class BackDegreeExceeded(OrderingError):
    def __init__(self, vertex, back: tuple, d: int, profile: "BackProfile"):
        super().__init__(f"vertex {vertex} has back-set of size {len(back)} > {d}: {list(back)}")
        self.vertex = vertex
        self.back = back
        self.d = d
        self.profile = profile


class NotNeighbors(OrderingError):
    pass


def adjacency_of(g) -> dict:
    """Simple-graph adjacency sets of any supported graph type."""
    if hasattr(g, "adjacency") and hasattr(g, "rnext"):
        return g.adjacency()
    if hasattr(g, "adj") and hasattr(g, "nodes"):
        return {v: set(g.adj[v]) - {v} for v in g.nodes}
    if isinstance(g, Mapping):
        adj = {v: set() for v in g}
        for v, ws in g.items():
            for w in ws:
                if w != v:
                    adj[v].add(w)
                    adj.setdefault(w, set()).add(v)
        return adj
    raise TypeError(f"unsupported graph type {type(g).__name__}")


@dataclass
class BackProfile:
    """Back-set sizes of a verified ordering."""

    sizes: dict
    witness: dict = field(repr=False)
    max_back: int = 0

    @property
    def col2_bound(self) -> int:
        return self.max_back + 1


def _back_sets(adj: dict, C: set, seq: Sequence) -> dict:
    pos = {v: i for i, v in enumerate(seq)}
    out = {}
    for v in seq:
        pv = pos[v]
        back = set()
        for w in adj[v]:
            if w in C:
                back.update(u for u in adj[w] if u not in C and pos[u] < pv)
                continue
            if pos[w] < pv:
                back.add(w)
            else:
                back.update(u for u in adj[w] if u not in C and pos[u] < pv)
        back.discard(v)
        out[v] = back
    return out


def back_set(g, C: Iterable, ordering: Sequence, v) -> tuple:
    """Sorted back-set of ``v`` under ``ordering`` relative to ``C``."""
    adj = adjacency_of(g)
    C = set(C)
    return tuple(sorted(_back_sets(adj, C, ordering)[v]))


def back_profile(g, ordering: Sequence, C: Iterable = ()) -> BackProfile:
    adj = adjacency_of(g)
    sets = _back_sets(adj, set(C), ordering)
    sizes = {v: len(s) for v, s in sets.items()}
    return BackProfile(
        sizes=sizes,
        witness={v: tuple(sorted(s)) for v, s in sets.items()},
        max_back=max(sizes.values(), default=0),
    )


def verify(g, ordering: Sequence, d: int, K: Iterable = (), C: Iterable = ()) -> BackProfile:
    """Check that ``ordering`` is d-two-degenerate relative to ``C`` with K first.

    Returns the full profile on success.  Raises :class:`DomainMismatch`,
    :class:`KPrefixViolation` or :class:`BackDegreeExceeded` (for the
    earliest offending vertex) otherwise.
    """
    C, K = set(C), set(K)
    adj = adjacency_of(g)
    seq = list(ordering)
    domain = set(adj) - C
    if len(seq) != len(set(seq)) or set(seq) != domain:
        missing = sorted(domain - set(seq))
        extra = sorted(set(seq) - domain)
        raise DomainMismatch(f"ordering is not a permutation of V - C (missing {missing}, extra {extra})")
    first_non_k = None
    for v in seq:
        if v in K:
            if first_non_k is not None:
                raise KPrefixViolation(v, first_non_k)
        elif first_non_k is None:
            first_non_k = v
    profile = back_profile(adj, seq, C)
    for v in seq:
        if profile.sizes[v] > d:
            raise BackDegreeExceeded(v, profile.witness[v], d, profile)
    return profile


def is_valid(g, ordering: Sequence, d: int, K: Iterable = (), C: Iterable = ()) -> bool:
    try:
        verify(g, ordering, d, K, C)
    except OrderingError:
        return False
    return True


def friends(g, C: Iterable, ordering: Sequence, u, v) -> tuple:
    """Friends of ``u`` via its neighbor ``v``.

    ``w`` (outside C, before ``u``) is a friend when ``w == v``; or
    ``vw`` is an edge, ``uw`` is not, and ``v`` is in C; or ``vw`` is an
    edge, ``uw`` is not, ``u`` and ``w`` share no neighbor in C, and ``v``
    comes after ``u``.
    """
    adj = adjacency_of(g)
    C = set(C)
    if v not in adj.get(u, ()):
        raise NotNeighbors(f"{u} and {v} are not adjacent")
    pos = {x: i for i, x in enumerate(ordering)}
    pu = pos[u]
    out = set()
    if v not in C and pos[v] < pu:
        out.add(v)
    for w in adj[v]:
        if w == u or w in C or pos[w] >= pu or w in adj[u]:
            continue
        if v in C:
            out.add(w)
        elif pos[v] > pu and not any(x in C for x in adj[u] & adj[w]):
            out.add(w)
    return tuple(sorted(out))


def col2_from_ordering(profile: BackProfile) -> int:
    return profile.max_back + 1
