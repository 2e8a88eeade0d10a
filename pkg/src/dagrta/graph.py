"""Weighted DAG model and structural queries.

A :class:`DagTask` is an immutable directed acyclic graph whose vertices
carry a non-negative worst-case execution time (WCET).  After construction
the graph always has exactly one source and one sink; :func:`build_dag`
inserts zero-WCET dummy endpoints when the raw input has several.

Vertex ids are dense integers ``0..n-1`` assigned in input order (dummy
endpoints get the next ids).  All derived data (topological order,
reachability closure, left/right length tables, longest path) is computed
lazily and cached on the owning object, which is safe because instances are
never mutated: every structural change produces a new object.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Union

import numpy as np

Number = Union[int, float]

SOURCE_LABEL = "__source__"
SINK_LABEL = "__sink__"


class CycleError(ValueError):
    """The edge relation contains, or an insertion would create, a cycle."""


class RedundantEdgeError(ValueError):
    """The requested edge is implied by existing precedence constraints."""


@dataclass(frozen=True)
class GeneralizedPath:
    """Vertex sequence ordered by the ancestor relation of its graph.

    Unlike a plain path, consecutive members need not be joined by an
    edge; an ancestor chain suffices.  ``length`` is the sum of member
    WCETs measured in the graph the path was extracted from (effective
    WCETs when that graph was a residue).
    """

    vertices: tuple[int, ...]
    length: Number

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


@dataclass(frozen=True)
class GeneralizedPathList:
    """Pairwise vertex-disjoint generalized paths."""

    paths: tuple[GeneralizedPath, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for p in self.paths:
            for v in p.vertices:
                if v in seen:
                    raise ValueError(f"paths are not disjoint: vertex {v} repeats")
                seen.add(v)

    @property
    def lengths(self) -> tuple[Number, ...]:
        return tuple(p.length for p in self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


@dataclass(frozen=True)
class LengthTable:
    """Per-vertex left/right lengths (``el``/``er`` when built on a residue).

    ``left[v]`` is the maximum length of paths from the source to ``v``
    and ``right[v]`` the maximum from ``v`` to the sink; both include the
    WCETs of their endpoints, so ``left[v] + right[v] - c(v)`` is the
    longest complete path through ``v``.
    """

    left: tuple[float, ...]
    right: tuple[float, ...]


class ReachabilityIndex:
    """Transitive closure of the edge relation, one bitmask per vertex."""

    __slots__ = ("n", "_anc", "_des", "_pmatrix")

    def __init__(self, anc_masks: Sequence[int], des_masks: Sequence[int]):
        self.n = len(anc_masks)
        self._anc = tuple(anc_masks)
        self._des = tuple(des_masks)
        self._pmatrix: np.ndarray | None = None

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"unknown vertex id {v!r}")

    def ancestor_mask(self, v: int) -> int:
        self._check(v)
        return self._anc[v]

    def descendant_mask(self, v: int) -> int:
        self._check(v)
        return self._des[v]

    def parallel_mask(self, v: int) -> int:
        self._check(v)
        full = (1 << self.n) - 1
        return full & ~(self._anc[v] | self._des[v] | (1 << v))

    def ancestors(self, v: int) -> frozenset[int]:
        return _mask_to_set(self.ancestor_mask(v))

    def descendants(self, v: int) -> frozenset[int]:
        return _mask_to_set(self.descendant_mask(v))

    def parallel(self, v: int) -> frozenset[int]:
        return _mask_to_set(self.parallel_mask(v))

    def is_ancestor(self, u: int, v: int) -> bool:
        self._check(u)
        return bool(self.ancestor_mask(v) >> u & 1)

    def parallel_matrix(self) -> np.ndarray:
        """Boolean matrix ``P[v, u]`` == (u is parallel to v); cached."""
        if self._pmatrix is None:
            n = self.n
            nbytes = (n + 7) // 8
            buf = bytearray()
            for v in range(n):
                blocked = self._anc[v] | self._des[v] | (1 << v)
                buf += blocked.to_bytes(nbytes, "little")
            packed = np.frombuffer(bytes(buf), dtype=np.uint8).reshape(n, nbytes)
            bits = np.unpackbits(packed, axis=1, bitorder="little")[:, :n]
            self._pmatrix = bits == 0
        return self._pmatrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReachabilityIndex):
            return NotImplemented
        return self._anc == other._anc and self._des == other._des

    def __hash__(self) -> int:
        return hash((self._anc, self._des))


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


class DagTask:
    """Immutable weighted DAG with a unique source and a unique sink.

    Construct through :func:`build_dag` (validates and normalizes raw
    input) or :func:`add_edge` (derives a new graph from an existing one).
    """

    __slots__ = ("wcets", "succ", "pred", "source", "sink", "labels",
                 "_topo", "_reach", "_tables", "_longest", "_volume")

    def __init__(self, wcets, succ, pred, source, sink, labels):
        self.wcets: tuple[Number, ...] = wcets
        self.succ: tuple[tuple[int, ...], ...] = succ
        self.pred: tuple[tuple[int, ...], ...] = pred
        self.source: int = source
        self.sink: int = sink
        self.labels: tuple[Hashable, ...] = labels
        self._topo = None
        self._reach = None
        self._tables = None
        self._longest = None
        self._volume = None

    @property
    def n(self) -> int:
        return len(self.wcets)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.succ[u]]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.succ[u]

    def __repr__(self) -> str:
        m = sum(len(s) for s in self.succ)
        return f"DagTask(n={self.n}, edges={m}, vol={volume(self)})"


class ResidueGraph:
    """A DagTask topology with a zero-WCET mask over consumed vertices.

    ``effective[v]`` is either 0 (consumed) or the base WCET.  The
    topology is shared with ``base``, so reachability queries delegate
    to it; only the length-related caches are local.
    """

    __slots__ = ("base", "effective", "_tables", "_longest", "_volume")

    def __init__(self, base: DagTask, effective: tuple[Number, ...]):
        self.base = base
        self.effective = effective
        self._tables = None
        self._longest = None
        self._volume = None

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def succ(self):
        return self.base.succ

    @property
    def pred(self):
        return self.base.pred

    @property
    def source(self) -> int:
        return self.base.source

    @property
    def sink(self) -> int:
        return self.base.sink

    def __repr__(self) -> str:
        return f"ResidueGraph(n={self.n}, vol={volume(self)})"


GraphLike = Union[DagTask, ResidueGraph]


def _weights(g: GraphLike) -> tuple[Number, ...]:
    return g.effective if isinstance(g, ResidueGraph) else g.wcets


def _base(g: GraphLike) -> DagTask:
    return g.base if isinstance(g, ResidueGraph) else g


def build_dag(vertices: Iterable[tuple[Hashable, Number]],
              edges: Iterable[tuple[Hashable, Hashable]]) -> DagTask:
    """Validate raw (id, wcet) pairs plus an edge list and normalize.

    Ids may be any hashable values; they are remapped to dense integers in
    input order and kept as ``labels``.  If the graph has several sources
    or sinks a zero-WCET dummy endpoint is inserted and connected.

    Raises ``ValueError`` for malformed input (duplicate/unknown ids,
    self-loops, parallel edges, negative WCETs) and :class:`CycleError`
    when the edge relation is not acyclic.
    """
    raw = list(vertices)
    if not raw:
        raise ValueError("graph needs at least one vertex")
    index: dict[Hashable, int] = {}
    wcets: list[Number] = []
    labels: list[Hashable] = []
    for label, wcet in raw:
        if label in index:
            raise ValueError(f"duplicate vertex id {label!r}")
        if wcet < 0:
            raise ValueError(f"negative WCET for vertex {label!r}")
        index[label] = len(wcets)
        wcets.append(wcet)
        labels.append(label)

    succ: list[list[int]] = [[] for _ in wcets]
    pred: list[list[int]] = [[] for _ in wcets]
    seen_edges: set[tuple[int, int]] = set()
    for a, b in edges:
        if a not in index or b not in index:
            raise ValueError(f"edge ({a!r}, {b!r}) references an unknown vertex id")
        u, v = index[a], index[b]
        if u == v:
            raise ValueError(f"self-loop on vertex {a!r}")
        if (u, v) in seen_edges:
            raise ValueError(f"parallel edge ({a!r}, {b!r})")
        seen_edges.add((u, v))
        succ[u].append(v)
        pred[v].append(u)

    sources = [v for v in range(len(wcets)) if not pred[v]]
    sinks = [v for v in range(len(wcets)) if not succ[v]]
    if not sources or not sinks:
        raise CycleError("graph has no source/sink vertex: edge relation is cyclic")

    if len(sources) > 1:
        src = len(wcets)
        wcets.append(0)
        labels.append(SOURCE_LABEL)
        succ.append(sorted(sources))
        pred.append([])
        for v in sources:
            pred[v].append(src)
    else:
        src = sources[0]

    if len(sinks) > 1:
        snk = len(wcets)
        wcets.append(0)
        labels.append(SINK_LABEL)
        succ.append([])
        pred.append(sorted(sinks))
        for v in sinks:
            succ[v].append(snk)
    else:
        snk = sinks[0]

    g = DagTask(
        wcets=tuple(wcets),
        succ=tuple(tuple(sorted(s)) for s in succ),
        pred=tuple(tuple(sorted(p)) for p in pred),
        source=src,
        sink=snk,
        labels=tuple(labels),
    )
    topo_order(g)  # raises CycleError if normalization left a cycle
    return g


def topo_order(g: GraphLike) -> tuple[int, ...]:
    """Topological order with ascending-id tie-break; cached on the base."""
    base = _base(g)
    if base._topo is None:
        n = base.n
        indeg = [len(base.pred[v]) for v in range(n)]
        ready = sorted(v for v in range(n) if indeg[v] == 0)
        order: list[int] = []
        heapq.heapify(ready)
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for s in base.succ[v]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    heapq.heappush(ready, s)
        if len(order) != n:
            raise CycleError("edge relation is cyclic")
        base._topo = tuple(order)
    return base._topo


def volume(g: GraphLike, subset: Iterable[int] | None = None) -> Number:
    """Total (effective) workload of the graph, or of a vertex subset."""
    w = _weights(g)
    if subset is not None:
        return sum(w[v] for v in subset)
    if g._volume is None:
        g._volume = sum(w)
    return g._volume


def reachability(g: GraphLike) -> ReachabilityIndex:
    """Exact transitive closure, recomputed from scratch per graph object."""
    base = _base(g)
    if base._reach is None:
        order = topo_order(base)
        n = base.n
        des = [0] * n
        for v in reversed(order):
            m = 0
            for s in base.succ[v]:
                m |= des[s] | (1 << s)
            des[v] = m
        anc = [0] * n
        for v in order:
            m = 0
            for p in base.pred[v]:
                m |= anc[p] | (1 << p)
            anc[v] = m
        base._reach = ReachabilityIndex(anc, des)
    return base._reach


def para(idx: ReachabilityIndex, v: int) -> frozenset[int]:
    """Vertices neither ancestors nor descendants of ``v`` (Definition of
    the parallel set); these are the legal edge-addition partners."""
    return idx.parallel(v)


def _length_arrays(g: GraphLike) -> tuple[np.ndarray, np.ndarray]:
    """Left/right length tables as float arrays; cached per object."""
    if g._tables is None:
        order = topo_order(g)
        w = _weights(g)
        n = g.n
        left = [0.0] * n
        for v in order:
            best = 0.0
            for p in g.pred[v]:
                lp = left[p]
                if lp > best:
                    best = lp
            left[v] = best + w[v]
        right = [0.0] * n
        for v in reversed(order):
            best = 0.0
            for s in g.succ[v]:
                rs = right[s]
                if rs > best:
                    best = rs
            right[v] = best + w[v]
        g._tables = (np.array(left), np.array(right))
    return g._tables


def length_tables(g: GraphLike) -> LengthTable:
    """Per-vertex left/right lengths (``el``/``er`` on a residue graph).

    Computed by dynamic programming over the topological order in
    O(|V|+|E|); both endpoint WCETs are included in each entry.
    """
    left, right = _length_arrays(g)
    return LengthTable(left=tuple(left.tolist()), right=tuple(right.tolist()))


def longest_path(g: GraphLike) -> GeneralizedPath:
    """Complete source-to-sink path of maximal (effective) length.

    Ties are broken deterministically: walking back from the sink, the
    smallest-id predecessor attaining the maximum left length wins.
    """
    if g._longest is None:
        left, _ = _length_arrays(g)
        w = _weights(g)
        v = g.sink
        rev = [v]
        while v != g.source:
            best = -1
            best_val = -1.0
            for p in g.pred[v]:
                lp = left[p]
                if lp > best_val or (lp == best_val and p < best):
                    best_val = lp
                    best = p
            v = best
            rev.append(v)
        rev.reverse()
        g._longest = GeneralizedPath(tuple(rev), sum(w[u] for u in rev))
    return g._longest


def residue(g: GraphLike, gamma: GeneralizedPath | Iterable[int]) -> ResidueGraph:
    """Zero out the (effective) WCETs of ``gamma``'s members.

    Composable: applying it to a residue accumulates the mask while the
    topology stays untouched.
    """
    members = tuple(gamma.vertices if isinstance(gamma, GeneralizedPath) else gamma)
    w = list(_weights(g))
    for v in members:
        if not 0 <= v < len(w):
            raise ValueError(f"unknown vertex id {v!r}")
        w[v] = 0
    return ResidueGraph(base=_base(g), effective=tuple(w))


def add_edge(g: DagTask, u: int, v: int) -> DagTask:
    """Return a new graph with edge ``(u, v)`` added.

    Only edges between parallel vertices are meaningful: if ``u`` is
    already an ancestor of ``v`` the edge adds nothing
    (:class:`RedundantEdgeError`), and if ``u`` is a descendant the edge
    would close a cycle (:class:`CycleError`).
    """
    if not 0 <= u < g.n or not 0 <= v < g.n:
        raise ValueError(f"unknown vertex id in edge ({u!r}, {v!r})")
    if u == v:
        raise ValueError(f"self-loop on vertex {u!r}")
    idx = reachability(g)
    if idx.is_ancestor(u, v):
        raise RedundantEdgeError(f"vertex {u} is already an ancestor of {v}")
    if idx.is_ancestor(v, u):
        raise CycleError(f"edge ({u}, {v}) would create a cycle")
    succ = list(g.succ)
    pred = list(g.pred)
    succ[u] = tuple(sorted(succ[u] + (v,)))
    pred[v] = tuple(sorted(pred[v] + (u,)))
    return DagTask(
        wcets=g.wcets,
        succ=tuple(succ),
        pred=tuple(pred),
        source=g.source,
        sink=g.sink,
        labels=g.labels,
    )


def is_generalized_path(g: GraphLike, vertices: Sequence[int]) -> bool:
    """True iff consecutive members are ordered by the ancestor relation."""
    idx = reachability(g)
    return all(idx.is_ancestor(a, b) for a, b in zip(vertices, vertices[1:]))


def validate_dag(g: DagTask) -> None:
    """Re-verify every structural invariant of a DagTask from scratch.

    Used by property tests and the generator; raises ``ValueError`` (or
    :class:`CycleError`) naming the first violated invariant.
    """
    n = g.n
    if n == 0:
        raise ValueError("empty graph")
    for v in range(n):
        if g.wcets[v] < 0:
            raise ValueError(f"negative WCET at vertex {v}")
        for s in g.succ[v]:
            if v not in g.pred[s]:
                raise ValueError(f"succ/pred mismatch on edge ({v}, {s})")
    sources = [v for v in range(n) if not g.pred[v]]
    sinks = [v for v in range(n) if not g.succ[v]]
    if sources != [g.source] or sinks != [g.sink]:
        raise ValueError("graph does not have exactly one source and one sink")
    topo_order(g)  # CycleError if cyclic
    idx = reachability(g)
    for v in range(n):
        if v != g.source and not idx.is_ancestor(g.source, v):
            raise ValueError(f"vertex {v} unreachable from source")
        if v != g.sink and not idx.is_ancestor(v, g.sink):
            raise ValueError(f"vertex {v} cannot reach sink")
