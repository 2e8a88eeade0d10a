"""Edge addition: constructing longer generalized paths to shrink the bound.

Counter-intuitively, adding precedence edges to a DAG task can *reduce*
its worst-case response time bound: a longer second path soaks up more
of the interfering workload in the multi-path bound.  An edge (u, v) is
inserted only when three checks pass:

1. u is parallel to v, so the edge is neither redundant nor a cycle;
2. left(u) + right(v) <= limit, so the longest path stays within
   ``limit`` (with limit = len(G) it is preserved exactly);
3. eleft(u) + eright(v) > len(residue), so the residue's longest path
   strictly lengthens — the insertion provably makes progress.

Check 2 reads the tables of the full graph (including previously added
edges); check 3 reads the tables of the current residue graph.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import multipath_bound
from .graph import (
    DagTask,
    GeneralizedPath,
    GeneralizedPathList,
    LengthTable,
    Number,
    ResidueGraph,
    _length_arrays,
    add_edge,
    longest_path,
    reachability,
    residue,
    volume,
)


@dataclass(frozen=True)
class InsertionRecord:
    """One accepted edge, with the residue longest-path length around it."""

    edge: tuple[int, int]
    residue_len_before: Number
    residue_len_after: Number


@dataclass(frozen=True)
class OptimizationResult:
    """Output of the edge-adding iteration.

    ``graph`` is the input plus ``added_edges``; ``path_list`` is the
    disjoint generalized path list emitted along the way, whose lengths
    sum to the (unchanged) volume.
    """

    graph: DagTask
    added_edges: tuple[tuple[int, int], ...]
    path_list: GeneralizedPathList
    limit: float
    insertions: tuple[InsertionRecord, ...]


def check_principle2(tables: LengthTable, u: int, v: int, limit: Number) -> bool:
    """Would the longest path stay within ``limit`` after adding (u, v)?

    ``tables`` must be current for the full graph, including previously
    added edges.  Any new complete path through (u, v) has length at most
    ``left(u) + right(v)``.
    """
    return tables.left[u] + tables.right[v] <= limit


def check_principle3(residue_tables: LengthTable, u: int, v: int,
                     len_residue: Number) -> bool:
    """Would the residue's longest path strictly lengthen after (u, v)?

    ``residue_tables`` must be current for the residue graph whose
    longest-path length is ``len_residue``.
    """
    return residue_tables.left[u] + residue_tables.right[v] > len_residue


def _find_candidate(g: DagTask, g_r: ResidueGraph, gamma: GeneralizedPath,
                    limit: Number) -> tuple[int, int] | None:
    """First edge passing all three checks.

    Scans v along ``gamma`` in path order; for each v it first tries
    incoming edges (u, v) and then outgoing edges (v, u), with u running
    over the parallel set in ascending id order.  Both orientations obey
    the same two length checks with the roles of the endpoints swapped:
    a new path through (a, b) reaches eleft(a) + eright(b), so either
    direction can lengthen the residue's longest path.
    """
    left, right = _length_arrays(g)
    eleft, eright = _length_arrays(g_r)
    len_r = longest_path(g_r).length
    pmatrix = reachability(g).parallel_matrix()
    for v in gamma.vertices:
        cand = pmatrix[v] & (left <= limit - right[v]) & (eleft > len_r - eright[v])
        u = int(np.argmax(cand))
        if cand[u]:
            return (u, int(v))
        cand = pmatrix[v] & (right <= limit - left[v]) & (eright > len_r - eleft[v])
        u = int(np.argmax(cand))
        if cand[u]:
            return (int(v), u)
    return None


def add_edge_pass(gamma: GeneralizedPath, g: DagTask, g_r: ResidueGraph,
                  limit: Number) -> tuple[DagTask, ResidueGraph, tuple[int, int] | None]:
    """One pass of the edge-adding procedure over the path ``gamma``.

    ``gamma`` should be the current longest path of ``g_r``.  Candidate
    edges pair a path member with a vertex of its parallel set, in either
    orientation; on the first candidate passing all three checks the edge
    is added to both the graph and the residue, and the updated pair is
    returned together with the edge (``None`` when no candidate passed).
    """
    found = _find_candidate(g, g_r, gamma, limit)
    if found is None:
        return g, g_r, None
    u, v = found
    g2 = add_edge(g, u, v)
    return g2, ResidueGraph(base=g2, effective=g_r.effective), found


def optimize(g: DagTask, limit: Number) -> OptimizationResult:
    """Add edges and emit a disjoint generalized path list exhausting vol(g).

    Repeatedly takes the longest path of the residue graph and tries one
    edge insertion on it; on success everything is recomputed, otherwise
    the path (stripped of zero-effective members) is emitted and zeroed.
    ``limit`` caps the longest-path length of the result and must lie in
    ``[len(g), vol(g)]``; with ``limit = len(g)`` the longest path is
    preserved exactly.  Terminates because each insertion strictly
    increases the residue's longest path and edges are bounded.
    """
    base_len = longest_path(g).length
    vol = volume(g)
    if limit < base_len - 1e-9 or limit > vol + 1e-9:
        raise ValueError(
            f"limit {limit} outside the meaningful range [len(g)={base_len}, vol(g)={vol}]"
        )

    current = g
    res = residue(g, ())
    paths: list[GeneralizedPath] = []
    added: list[tuple[int, int]] = []
    inserted: list[InsertionRecord] = []
    while volume(res) > 0:
        gamma = longest_path(res)
        current, new_res, edge = add_edge_pass(gamma, current, res, limit)
        if edge is not None:
            added.append(edge)
            res = new_res
            inserted.append(InsertionRecord(
                edge=edge,
                residue_len_before=gamma.length,
                residue_len_after=longest_path(res).length,
            ))
            continue
        members = tuple(v for v in gamma.vertices if res.effective[v] != 0)
        paths.append(GeneralizedPath(members, gamma.length))
        res = residue(res, members)
    return OptimizationResult(
        graph=current,
        added_edges=tuple(added),
        path_list=GeneralizedPathList(tuple(paths)),
        limit=float(limit),
        insertions=tuple(inserted),
    )


def optimize_for_bound(g: DagTask, m: int) -> tuple[OptimizationResult, float]:
    """Optimize with limit = len(g) and bound the result on ``m`` cores.

    The returned bound never exceeds the multi-path bound of the
    baseline path list on the unmodified graph.
    """
    if m < 1:
        raise ValueError(f"core count must be >= 1, got {m}")
    result = optimize(g, longest_path(g).length)
    bound = multipath_bound(result.graph, result.path_list, m)
    return result, bound
