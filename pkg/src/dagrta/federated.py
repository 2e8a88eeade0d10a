"""Federated scheduling of sporadic DAG task sets.

Heavy tasks (volume >= deadline) each get a dedicated core cluster; the
cluster size is minimized per task.  Light tasks run as sequential
sporadic tasks, packed onto the remaining cores first-fit-decreasing by
density with a per-core density budget of 1.

Three heavy-task allocation rules are supported so experiments can
compare them: the classical federated formula (``fed``), the minimal
core count meeting the deadline under the baseline multi-path bound
(``path``), and the combined rule (``our``) that also tries edge
addition with the deadline as the length limit and keeps the cheaper of
the two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import extract_path_list, multipath_bound
from .graph import DagTask, longest_path, volume
from .optimizer import optimize

INFEASIBLE = math.inf

APPROACHES = ("fed", "path", "our")


@dataclass(frozen=True)
class SporadicTask:
    """A DAG task with a constrained relative deadline: (G, D, T), D <= T."""

    graph: DagTask
    deadline: float
    period: float

    def __post_init__(self) -> None:
        if not 0 < self.deadline <= self.period:
            raise ValueError(
                f"need 0 < deadline <= period, got D={self.deadline}, T={self.period}"
            )

    @property
    def utilization(self) -> float:
        return volume(self.graph) / self.period

    @property
    def density(self) -> float:
        return volume(self.graph) / self.deadline


@dataclass(frozen=True)
class TaskSet:
    tasks: tuple[SporadicTask, ...]

    def __post_init__(self) -> None:
        if not self.tasks:
            raise ValueError("task set must not be empty")

    @property
    def utilization(self) -> float:
        return sum(t.utilization for t in self.tasks)

    def __len__(self) -> int:
        return len(self.tasks)

    def __iter__(self):
        return iter(self.tasks)


@dataclass(frozen=True)
class HeavyAllocation:
    task_index: int
    cores: float  # int core count, or INFEASIBLE
    winner: str   # "path" | "edge" | "fed" | "infeasible"


@dataclass(frozen=True)
class AllocationResult:
    """Outcome of scheduling a task set on a fixed platform."""

    schedulable: bool
    approach: str
    platform_cores: int
    heavy: tuple[HeavyAllocation, ...] = ()
    light_assignment: tuple[tuple[int, int], ...] = ()  # (task index, core slot)
    light_cores_used: int = 0

    @property
    def cores_used(self) -> float:
        return sum(h.cores for h in self.heavy) + self.light_cores_used

    def to_dict(self) -> dict:
        return {
            "schedulable": self.schedulable,
            "approach": self.approach,
            "platform_cores": self.platform_cores,
            "heavy": [
                {
                    "task": h.task_index,
                    "cores": None if h.cores == INFEASIBLE else int(h.cores),
                    "winner": h.winner,
                }
                for h in self.heavy
            ],
            "light_assignment": [
                {"task": t, "core": c} for t, c in self.light_assignment
            ],
            "light_cores_used": self.light_cores_used,
            "cores_used": None if self.cores_used == INFEASIBLE else int(self.cores_used),
        }


def classify(task: SporadicTask) -> str:
    """"heavy" when vol(G) >= D (cannot run sequentially), else "light"."""
    return "heavy" if volume(task.graph) >= task.deadline else "light"


def path_cores(g: DagTask, deadline: float) -> float:
    """Smallest core count whose baseline multi-path bound meets the deadline.

    Scans m upward; m = k+1 (the path-list size) always suffices because
    the bound then collapses to len(g).  Returns INFEASIBLE when even
    the longest path exceeds the deadline.
    """
    if deadline <= 0:
        raise ValueError(f"deadline must be positive, got {deadline}")
    if longest_path(g).length > deadline:
        return INFEASIBLE
    paths = extract_path_list(g)
    for m in range(1, len(paths) + 1):
        if multipath_bound(g, paths, m) <= deadline:
            return m
    return 1  # reachable only for zero-volume graphs (empty list)


def edge_cores(g: DagTask, deadline: float) -> float:
    """Core count certified by edge addition with the deadline as limit.

    Runs the optimizer with limit = min(D, vol(g)) and returns the number
    of emitted paths k+1: on that many cores the response time is at most
    the (possibly lengthened) longest path, which the limit keeps <= D.
    """
    if deadline <= 0:
        raise ValueError(f"deadline must be positive, got {deadline}")
    if longest_path(g).length > deadline:
        return INFEASIBLE
    limit = min(deadline, volume(g))
    result = optimize(g, limit)
    return len(result.path_list)


def fed_cores(g: DagTask, deadline: float) -> float:
    """Classical federated allocation ``ceil((vol - len) / (D - len))``."""
    if deadline <= 0:
        raise ValueError(f"deadline must be positive, got {deadline}")
    length = longest_path(g).length
    vol = volume(g)
    if length > deadline:
        return INFEASIBLE
    if vol <= deadline:
        return 1
    if deadline == length:
        return INFEASIBLE  # vol > D = len: no finite m meets the bound
    return max(1, math.ceil((vol - length) / (deadline - length)))


def allocate(g: DagTask, deadline: float) -> float:
    """Minimal core allocation: min of the path and edge methods."""
    cores, _ = allocate_detail(g, deadline)
    return cores


def allocate_detail(g: DagTask, deadline: float) -> tuple[float, str]:
    """Like :func:`allocate` but also reports which method won (ties go
    to "path")."""
    if deadline <= 0:
        raise ValueError(f"deadline must be positive, got {deadline}")
    if longest_path(g).length > deadline:
        return INFEASIBLE, "infeasible"
    optimized = optimize(g, longest_path(g).length).graph
    pc = path_cores(optimized, deadline)
    ec = edge_cores(g, deadline)
    if pc <= ec:
        return pc, "path"
    return ec, "edge"


def _heavy_cores(task: SporadicTask, approach: str) -> tuple[float, str]:
    if approach == "our":
        return allocate_detail(task.graph, task.deadline)
    if approach == "path":
        cores = path_cores(task.graph, task.deadline)
    elif approach == "fed":
        cores = fed_cores(task.graph, task.deadline)
    else:
        raise ValueError(f"unknown approach {approach!r}")
    return cores, approach if cores != INFEASIBLE else "infeasible"


def schedule_task_set(ts: TaskSet, m_total: int, approach: str = "our") -> AllocationResult:
    """Decide schedulability of a task set on ``m_total`` cores.

    Heavy tasks get dedicated cores per the chosen approach; light tasks
    are packed first-fit-decreasing by density onto the remaining cores,
    each core carrying total density at most 1.
    """
    if m_total < 1:
        raise ValueError(f"core count must be >= 1, got {m_total}")
    heavy: list[HeavyAllocation] = []
    light: list[tuple[int, SporadicTask]] = []
    for i, task in enumerate(ts.tasks):
        if classify(task) == "heavy":
            cores, winner = _heavy_cores(task, approach)
            heavy.append(HeavyAllocation(task_index=i, cores=cores, winner=winner))
        else:
            light.append((i, task))

    heavy_total = sum(h.cores for h in heavy)
    if heavy_total > m_total:
        return AllocationResult(
            schedulable=False, approach=approach, platform_cores=m_total,
            heavy=tuple(heavy),
        )

    remaining = int(m_total - heavy_total)
    light.sort(key=lambda item: (-item[1].density, item[0]))
    loads = [0.0] * remaining
    assignment: list[tuple[int, int]] = []
    used = 0
    for i, task in light:
        slot = next((c for c in range(remaining) if loads[c] + task.density <= 1.0), None)
        if slot is None:
            return AllocationResult(
                schedulable=False, approach=approach, platform_cores=m_total,
                heavy=tuple(heavy), light_assignment=tuple(assignment),
                light_cores_used=used,
            )
        loads[slot] += task.density
        used = max(used, slot + 1)
        assignment.append((i, slot))
    assignment.sort()
    return AllocationResult(
        schedulable=True, approach=approach, platform_cores=m_total,
        heavy=tuple(heavy), light_assignment=tuple(assignment),
        light_cores_used=used,
    )
