"""Brute-force oracles, independent of the library's algorithms.

Everything here enumerates paths or pairs directly over the adjacency
lists, so it stays exponential-but-exact on the small graphs the
property tests use (|V| <= 12 for path enumeration).
"""
from __future__ import annotations

import numpy as np

from dagrta.graph import DagTask, ResidueGraph, build_dag


def weights(g) -> tuple:
    return g.effective if isinstance(g, ResidueGraph) else g.wcets


def all_complete_paths(g) -> list[tuple[int, ...]]:
    """Every source-to-sink path, by depth-first enumeration."""
    out: list[tuple[int, ...]] = []

    def walk(v, acc):
        if v == g.sink:
            out.append(tuple(acc))
            return
        for s in g.succ[v]:
            walk(s, acc + [s])

    walk(g.source, [g.source])
    return out


def path_length(g, path) -> float:
    w = weights(g)
    return sum(w[v] for v in path)


def brute_longest_length(g) -> float:
    return max(path_length(g, p) for p in all_complete_paths(g))


def brute_reachable(g, u: int, v: int) -> bool:
    """Path existence u -> v by depth-first search."""
    stack, seen = [u], set()
    while stack:
        x = stack.pop()
        for s in g.succ[x]:
            if s == v:
                return True
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return False


def brute_left_right(g, v: int) -> tuple[float, float]:
    """Max path length source->v / v->sink, endpoints included."""
    w = weights(g)

    def best_to(x, target, forward):
        if x == target:
            return w[x]
        nbrs = g.succ[x] if forward else g.pred[x]
        vals = [best_to(n, target, forward) for n in nbrs]
        vals = [val for val in vals if val is not None]
        if not vals:
            return None
        return w[x] + max(vals)

    left = best_to(v, g.source, forward=False)
    right = best_to(v, g.sink, forward=True)
    assert left is not None and right is not None
    return left, right


def random_raw_dag(rng: np.random.Generator, n_max: int = 12,
                   wcet_hi: int = 9) -> DagTask:
    """Small random DAG built directly from raw parts (not via taskgen)."""
    n = int(rng.integers(2, n_max + 1))
    p = float(rng.uniform(0.1, 0.7))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    wcets = [int(rng.integers(0, wcet_hi + 1)) for _ in range(n)]
    return build_dag(list(enumerate(wcets)), edges)
