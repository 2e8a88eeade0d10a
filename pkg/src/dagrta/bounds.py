"""Response-time bounds for a DAG task under work-conserving scheduling.

Two analyses are provided: the classical Graham bound
``len(G) + (vol(G) - len(G)) / m`` and the multi-path bound, which
improves on it by subtracting the workload of several disjoint
generalized paths before dividing the remainder across the cores they
do not occupy.  :func:`extract_path_list` builds the baseline list by
repeatedly taking the longest path of the residue graph until the whole
volume is consumed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import (
    DagTask,
    GeneralizedPath,
    GeneralizedPathList,
    GraphLike,
    Number,
    _weights,
    longest_path,
    residue,
    volume,
)


@dataclass(frozen=True)
class BoundReport:
    """Everything `analyze` knows about one (task, core count) pair."""

    cores: int
    volume: Number
    longest_path_length: Number
    graham: float
    multipath: float
    path_lengths: tuple[Number, ...]

    def to_dict(self) -> dict:
        return {
            "cores": self.cores,
            "volume": self.volume,
            "longest_path_length": self.longest_path_length,
            "graham_bound": self.graham,
            "multipath_bound": self.multipath,
            "path_lengths": list(self.path_lengths),
        }


def graham_bound(g: GraphLike, m: int) -> float:
    """Classical makespan bound ``len(G) + (vol(G) - len(G)) / m``."""
    if m < 1:
        raise ValueError(f"core count must be >= 1, got {m}")
    length = longest_path(g).length
    return length + (volume(g) - length) / m


def extract_path_list(g: GraphLike) -> GeneralizedPathList:
    """Decompose the whole volume into disjoint generalized paths.

    Iteratively takes the longest path of the residue graph, strips
    members whose effective WCET is already zero (dummies and previously
    consumed vertices), emits the rest, and zeroes them in turn.  The
    first emitted path always has length ``len(g)`` and the lengths sum
    to ``vol(g)``.
    """
    res = residue(g, ())
    paths: list[GeneralizedPath] = []
    while volume(res) > 0:
        lp = longest_path(res)
        members = tuple(v for v in lp.vertices if res.effective[v] != 0)
        paths.append(GeneralizedPath(members, lp.length))
        res = residue(res, members)
    return GeneralizedPathList(tuple(paths))


def multipath_bound(g: GraphLike, paths: GeneralizedPathList, m: int) -> float:
    """Multi-path response-time bound over a disjoint generalized path list.

    Requires the first path to be a longest path of ``g`` (checked on
    lengths; zero-WCET members may have been stripped).  Evaluates

        min over j in [0, min(k, m-1)] of
            len(g) + (vol(g) - sum_{i<=j} len(path_i)) / (m - j)

    The j = 0 term equals :func:`graham_bound` exactly, so the result
    never exceeds it.
    """
    if m < 1:
        raise ValueError(f"core count must be >= 1, got {m}")
    length = longest_path(g).length
    vol = volume(g)
    if not paths.paths:
        if vol == 0:
            return float(length)
        raise ValueError("empty path list for a graph with positive volume")
    first = paths.paths[0].length
    if not math.isclose(first, length, rel_tol=1e-9, abs_tol=1e-9):
        raise ValueError(
            f"first path (length {first}) is not a longest path (len(G) = {length})"
        )
    best = math.inf
    consumed = 0.0
    for j, p in enumerate(paths.paths):
        if j > m - 1:
            break
        consumed += p.length
        best = min(best, length + (vol - consumed) / (m - j))
    return best


def analyze(g: DagTask, m: int) -> BoundReport:
    """Graham and multi-path bounds for ``g`` on ``m`` cores."""
    paths = extract_path_list(g)
    return BoundReport(
        cores=m,
        volume=volume(g),
        longest_path_length=longest_path(g).length,
        graham=graham_bound(g, m),
        multipath=multipath_bound(g, paths, m),
        path_lengths=paths.lengths,
    )
