"""Greedy upper-bound orderings."""

from __future__ import annotations

import random
from typing import Iterable

from .ordering import adjacency_of


def greedy_backward(g, C: Iterable = (), K: Iterable = (), seed: int | None = None) -> list:
    """Build an ordering of ``V - C`` from the top down.

    At every step the unplaced vertex whose back-set would be smallest if
    it went directly below the already placed suffix is placed there.
    K-vertices become eligible only once every other vertex is placed,
    so the result always starts with K.  Ties go to the smallest vertex
    id, or are broken by a ``random.Random(seed)`` stream when a seed is
    given.
    """
    adj = adjacency_of(g)
    C, K = set(C), set(K)
    rng = random.Random(seed) if seed is not None else None
    rest = {v for v in adj if v not in C}
    non_k = rest - K
    share = {
        v: {u for w in adj[v] if w in C for u in adj[w] if u not in C} | (adj[v] - C)
        for v in rest
    }
    top: set = set()
    placed = []
    while rest:
        pool = non_k if non_k else rest
        best, best_size = [], None
        for v in sorted(pool):
            back = set(share[v])
            for w in adj[v]:
                if w in top:
                    back.update(u for u in adj[w] if u not in C)
            back -= top
            back.discard(v)
            size = len(back)
            if best_size is None or size < best_size:
                best, best_size = [v], size
            elif size == best_size:
                best.append(v)
        v = rng.choice(best) if rng is not None else best[0]
        placed.append(v)
        top.add(v)
        rest.discard(v)
        non_k.discard(v)
    placed.reverse()
    return placed
