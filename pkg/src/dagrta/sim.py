"""Discrete-event list scheduling of one DAG task on m identical cores.

The simulator dispatches eligible vertices to free cores in a given
priority order, never idling a core while an eligible vertex waits
(work conservation).  Vertices run non-preemptively for exactly their
WCET.  Simultaneous completions are processed by ascending core id then
vertex id, so traces are fully deterministic.

``validate_bound`` samples random priority orders and checks that no
observed makespan exceeds an analytical bound; it is the empirical
soundness oracle for the bound computations.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import DagTask, Number


class BoundViolationError(RuntimeError):
    """A simulated makespan exceeded a bound claimed to be sound."""


@dataclass(frozen=True)
class SimTrace:
    """Per-vertex (start, finish, core) plus the resulting makespan."""

    starts: tuple[Number, ...]
    finishes: tuple[Number, ...]
    cores: tuple[int, ...]
    core_count: int
    makespan: Number

    def rows(self) -> list[tuple[int, int, Number, Number]]:
        """Gantt rows (vertex, core, start, finish) sorted by start time."""
        order = sorted(range(len(self.starts)),
                       key=lambda v: (self.starts[v], self.cores[v], v))
        return [(v, self.cores[v], self.starts[v], self.finishes[v]) for v in order]

    def to_dict(self) -> dict:
        return {
            "core_count": self.core_count,
            "makespan": self.makespan,
            "vertices": [
                {"id": v, "core": c, "start": s, "finish": f}
                for v, c, s, f in self.rows()
            ],
        }


@dataclass(frozen=True)
class ValidationReport:
    trials: int
    bound: float
    max_makespan: Number
    mean_makespan: float

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "bound": self.bound,
            "max_makespan": self.max_makespan,
            "mean_makespan": self.mean_makespan,
        }


def simulate(g: DagTask, m: int, priority: Sequence[int]) -> SimTrace:
    """Execute ``g`` on ``m`` cores, dispatching by ``priority``.

    ``priority`` lists all vertex ids from highest to lowest priority.
    The source starts at time 0; the makespan is the sink's finish time.
    """
    n = g.n
    if m < 1:
        raise ValueError(f"core count must be >= 1, got {m}")
    if sorted(priority) != list(range(n)):
        raise ValueError("priority must be a permutation of all vertex ids")
    rank = [0] * n
    for pos, v in enumerate(priority):
        rank[v] = pos

    starts: list[Number] = [0] * n
    finishes: list[Number] = [0] * n
    on_core: list[int] = [0] * n
    waiting = [len(g.pred[v]) for v in range(n)]
    ready: list[tuple[int, int]] = [(rank[g.source], g.source)]
    free = list(range(m))
    heapq.heapify(free)
    events: list[tuple[Number, int, int]] = []  # (finish, core, vertex)

    def dispatch(now: Number) -> None:
        while ready and free:
            _, v = heapq.heappop(ready)
            core = heapq.heappop(free)
            starts[v] = now
            finishes[v] = now + g.wcets[v]
            on_core[v] = core
            heapq.heappush(events, (finishes[v], core, v))

    dispatch(0)
    while events:
        now = events[0][0]
        while events and events[0][0] == now:
            _, core, v = heapq.heappop(events)
            heapq.heappush(free, core)
            for s in g.succ[v]:
                waiting[s] -= 1
                if waiting[s] == 0:
                    heapq.heappush(ready, (rank[s], s))
        dispatch(now)

    return SimTrace(
        starts=tuple(starts),
        finishes=tuple(finishes),
        cores=tuple(on_core),
        core_count=m,
        makespan=finishes[g.sink],
    )


def check_trace(g: DagTask, trace: SimTrace) -> None:
    """Verify every trace invariant from the trace alone; raises on breach.

    Checks duration, precedence, the per-instant core limit and work
    conservation (no core idle while an eligible vertex waits).
    """
    n = g.n
    m = trace.core_count
    for v in range(n):
        if trace.finishes[v] != trace.starts[v] + g.wcets[v]:
            raise AssertionError(f"vertex {v} duration differs from its WCET")
        for p in g.pred[v]:
            if trace.starts[v] < trace.finishes[p]:
                raise AssertionError(f"vertex {v} started before predecessor {p} finished")
        if not 0 <= trace.cores[v] < m:
            raise AssertionError(f"vertex {v} ran on unknown core {trace.cores[v]}")
    # eligible time = max predecessor finish; between then and its start the
    # vertex waits, so every instant in that window must keep all m cores busy
    times = sorted({t for v in range(n) for t in (trace.starts[v], trace.finishes[v])})
    for lo, hi in zip(times, times[1:]):
        busy = sum(
            1 for v in range(n)
            if trace.starts[v] <= lo and trace.finishes[v] >= hi
            and trace.starts[v] < trace.finishes[v]
        )
        if busy > m:
            raise AssertionError(f"{busy} vertices overlap on {m} cores in [{lo}, {hi})")
        waiting = sum(
            1 for v in range(n)
            if max((trace.finishes[p] for p in g.pred[v]), default=0) <= lo
            and trace.starts[v] >= hi
        )
        if waiting and busy < m:
            raise AssertionError(
                f"work conservation violated in [{lo}, {hi}): "
                f"{waiting} eligible vertices waiting, only {busy}/{m} cores busy"
            )


def validate_bound(g: DagTask, m: int, bound: float, trials: int,
                   seed: int = 0) -> ValidationReport:
    """Simulate ``trials`` random priority orders and check the bound.

    Raises :class:`BoundViolationError` if any makespan exceeds ``bound``
    (this signals an unsound bound, not a simulation failure).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    worst: Number = 0
    total = 0.0
    for _ in range(trials):
        order = rng.permutation(g.n).tolist()
        span = simulate(g, m, order).makespan
        worst = max(worst, span)
        total += span
    if worst > bound + 1e-9:
        raise BoundViolationError(
            f"observed makespan {worst} exceeds the claimed bound {bound}"
        )
    return ValidationReport(
        trials=trials, bound=float(bound), max_makespan=worst,
        mean_makespan=total / trials,
    )
