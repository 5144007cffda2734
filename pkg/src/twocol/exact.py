"""Exact two-coloring numbers by search over suffix sets.

Orderings are built backwards: a set ``T`` of vertices is fixed at the
top of the order and the next vertex ``v`` goes immediately below it.
Its back-set is then determined by ``(v, T)`` alone -- the earlier
vertices are exactly those outside ``T``, and a common neighbor counts
when it lies in ``T`` or in C -- so feasibility of a suffix depends only
on the set, which makes memoizing over subsets sound.

Vertex sets are bitmasks over the vertices of ``V - C`` in sorted order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from .heuristics import greedy_backward
from .ordering import adjacency_of, back_profile

DEFAULT_N_LIMIT = 22


class TooLarge(ValueError):
    pass


@dataclass
class _Instance:
    verts: list
    adj: list          # bitmask of non-C neighbors
    base: list         # adj | vertices sharing a C-neighbor
    kmask: int
    full: int

    @property
    def nonk(self) -> int:
        return self.full & ~self.kmask


def _prepare(g, C: Iterable, K: Iterable, n_limit: int | None) -> _Instance:
    adj = adjacency_of(g)
    C, K = set(C), set(K)
    verts = sorted(v for v in adj if v not in C)
    if n_limit is not None and len(verts) > n_limit:
        raise TooLarge(f"{len(verts)} vertices outside C exceed the limit of {n_limit}")
    idx = {v: i for i, v in enumerate(verts)}
    nb = [0] * len(verts)
    base = [0] * len(verts)
    for v, i in idx.items():
        m = 0
        for w in adj[v]:
            if w in idx:
                m |= 1 << idx[w]
        nb[i] = m
        share = 0
        for w in adj[v]:
            if w in C:
                for u in adj[w]:
                    if u in idx:
                        share |= 1 << idx[u]
        base[i] = (m | share) & ~(1 << i)
    kmask = 0
    for v in K:
        if v in idx:
            kmask |= 1 << idx[v]
    return _Instance(verts, nb, base, kmask, (1 << len(verts)) - 1)


def _back_size(inst: _Instance, i: int, T: int) -> int:
    m = inst.base[i]
    w = inst.adj[i] & T
    while w:
        low = w & -w
        m |= inst.adj[low.bit_length() - 1]
        w ^= low
    return (m & ~T & ~(1 << i)).bit_count()


def _eligible(inst: _Instance, T: int) -> int:
    rest = inst.full & ~T
    if inst.nonk & rest:
        return rest & ~inst.kmask
    return rest


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def feasible_d(g, d: int, C: Iterable = (), K: Iterable = (), n_limit: int | None = DEFAULT_N_LIMIT) -> list | None:
    """A d-two-degenerate ordering (relative to C, K first) or ``None``."""
    inst = _prepare(g, C, K, n_limit)
    dead: set[int] = set()
    placed: list[int] = []

    def grow(T: int) -> bool:
        if T == inst.full:
            return True
        if T in dead:
            return False
        options = []
        for i in _bits(_eligible(inst, T)):
            s = _back_size(inst, i, T)
            if s <= d:
                options.append((s, i))
        options.sort()
        for _, i in options:
            placed.append(i)
            if grow(T | (1 << i)):
                return True
            placed.pop()
        dead.add(T)
        return False

    if not grow(0):
        return None
    return [inst.verts[i] for i in reversed(placed)]


def col2_exact(g, C: Iterable = (), K: Iterable = (), n_limit: int | None = DEFAULT_N_LIMIT) -> int:
    """Least ``d + 1`` over orderings of ``V - C`` that put K first."""
    C, K = set(C), set(K)
    inst = _prepare(g, C, K, n_limit)
    if not inst.verts:
        return 1
    upper = back_profile(g, greedy_backward(g, C, K), C).max_back
    lo, hi = 0, upper
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible_d(g, mid, C, K, n_limit) is not None:
            hi = mid
        else:
            lo = mid + 1
    return lo + 1


@dataclass
class LowerBoundResult:
    status: str                      # "infeasible", "feasible" or "timeout"
    d: int
    ordering: list | None = None
    nodes: int = 0
    dead_states: int = 0
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def infeasible(self) -> bool:
        return self.status == "infeasible"


class _Timeout(Exception):
    pass


def prove_lower_bound(
    g,
    d: int,
    budget_seconds: float = 60.0,
    C: Iterable = (),
    K: Iterable = (),
) -> LowerBoundResult:
    """Decide whether a d-two-degenerate ordering exists, within a time budget.

    ``infeasible`` certifies that no ordering keeps every back-set at size
    ``d`` or below, i.e. ``col2 >= d + 2``.

    Besides memoized dead suffix sets, the search forces a vertex ``v``
    whenever ``|L(v, T)| <= d`` and the unplaced neighbors of ``v`` are
    pairwise adjacent.  This is safe: moving ``v`` to the top of any
    completion only adds ``v`` to the suffix of vertices placed after it,
    which can add to their back-sets only pairs of unplaced neighbors of
    ``v`` -- already adjacent, so already counted.
    """
    start = time.monotonic()
    C, K = set(C), set(K)
    inst = _prepare(g, C, K, None)
    result = LowerBoundResult(status="timeout", d=d)
    greedy = greedy_backward(g, C, K)
    if back_profile(g, greedy, C).max_back <= d:
        result.status, result.ordering = "feasible", greedy
        result.notes.append("greedy ordering already meets the bound")
        result.seconds = time.monotonic() - start
        return result

    n = len(inst.verts)
    clique_pair = [[bool(inst.adj[i] >> j & 1) for j in range(n)] for i in range(n)]
    dead: set[int] = set()
    placed: list[int] = []
    counter = [0]

    def unplaced_nbrs_clique(i: int, T: int) -> bool:
        rest = [j for j in _bits(inst.adj[i] & ~T)]
        for a in range(len(rest)):
            for b in range(a + 1, len(rest)):
                if not clique_pair[rest[a]][rest[b]]:
                    return False
        return True

    def grow(T: int) -> bool:
        counter[0] += 1
        if counter[0] & 0x3FF == 0 and time.monotonic() - start > budget_seconds:
            raise _Timeout
        forced = []
        chain = []
        while True:
            if T == inst.full:
                return True
            if T in dead:
                break
            options = []
            pick = None
            for i in _bits(_eligible(inst, T)):
                s = _back_size(inst, i, T)
                if s <= d:
                    if unplaced_nbrs_clique(i, T):
                        pick = i
                        break
                    options.append((s, i))
            if pick is None:
                break
            forced.append(pick)
            chain.append(T)
            placed.append(pick)
            T |= 1 << pick
        if T == inst.full:
            return True
        if T not in dead:
            options.sort()
            for _, i in options:
                placed.append(i)
                if grow(T | (1 << i)):
                    return True
                placed.pop()
            dead.add(T)
        dead.update(chain)
        for _ in forced:
            placed.pop()
        return False

    try:
        ok = grow(0)
    except _Timeout:
        result.notes.append("budget exhausted")
    else:
        if ok:
            result.status = "feasible"
            result.ordering = [inst.verts[i] for i in reversed(placed)]
        else:
            result.status = "infeasible"
    result.nodes = counter[0]
    result.dead_states = len(dead)
    result.seconds = time.monotonic() - start
    return result
