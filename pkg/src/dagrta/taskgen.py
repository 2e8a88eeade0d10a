"""Random DAG-task and task-set generation (Erdos-Renyi style).

A graph is drawn by picking a vertex count and a parallelism factor
``pf`` from the configured ranges, then adding each forward edge
(i, j), i < j, independently with probability ``pf``.  Edges always go
from lower to higher index, so acyclicity holds by construction; the
usual dummy source/sink normalization happens in ``build_dag``.
Deadlines equal periods and are placed between the two structural
extremes: D = len(G) + alpha * (vol(G) - len(G)).

Everything is deterministic given (config, seed).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .federated import SporadicTask, TaskSet
from .graph import DagTask, build_dag, longest_path, volume


@dataclass(frozen=True)
class GenConfig:
    """Parameter ranges for the generator; defaults match the experiments."""

    wcet_range: tuple[int, int] = (50, 100)
    vertex_range: tuple[int, int] = (50, 250)
    pf_range: tuple[float, float] = (0.0, 0.5)
    alpha_range: tuple[float, float] = (0.0, 0.5)
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("wcet_range", "vertex_range", "pf_range", "alpha_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo} > {hi}")
        if not (0 <= self.pf_range[0] and self.pf_range[1] <= 1):
            raise ValueError(f"pf_range must lie within [0, 1], got {self.pf_range}")
        if not (0 <= self.alpha_range[0] and self.alpha_range[1] <= 1):
            raise ValueError(f"alpha_range must lie within [0, 1], got {self.alpha_range}")
        if self.vertex_range[0] < 1:
            raise ValueError("vertex_range must start at 1 or above")
        if self.wcet_range[0] < 0:
            raise ValueError("wcet_range must be non-negative")

    def pinned(self, **kwargs) -> "GenConfig":
        """Copy with single values pinned, e.g. pinned(pf=0.3, nv=100)."""
        updates = {}
        if "pf" in kwargs:
            updates["pf_range"] = (kwargs["pf"], kwargs["pf"])
        if "nv" in kwargs:
            updates["vertex_range"] = (kwargs["nv"], kwargs["nv"])
        if "alpha" in kwargs:
            updates["alpha_range"] = (kwargs["alpha"], kwargs["alpha"])
        if "wcet" in kwargs:
            updates["wcet_range"] = (kwargs["wcet"], kwargs["wcet"])
        return replace(self, **updates)

    def to_dict(self) -> dict:
        return {
            "wcet_range": list(self.wcet_range),
            "vertex_range": list(self.vertex_range),
            "pf_range": list(self.pf_range),
            "alpha_range": list(self.alpha_range),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GenConfig":
        kwargs = {}
        for name in ("wcet_range", "vertex_range", "pf_range", "alpha_range"):
            if name in d:
                kwargs[name] = tuple(d[name])
        if "seed" in d:
            kwargs["seed"] = d["seed"]
        return cls(**kwargs)


def _rng_for(cfg: GenConfig, seed: int | None) -> np.random.Generator:
    return np.random.default_rng(cfg.seed if seed is None else seed)


def _gen_dag(cfg: GenConfig, rng: np.random.Generator) -> DagTask:
    lo, hi = cfg.vertex_range
    n = int(rng.integers(lo, hi + 1))
    pf = float(rng.uniform(*cfg.pf_range))
    if n > 1:
        i_idx, j_idx = np.triu_indices(n, k=1)
        chosen = rng.random(len(i_idx)) < pf
        edges = list(zip(i_idx[chosen].tolist(), j_idx[chosen].tolist()))
    else:
        edges = []
    wlo, whi = cfg.wcet_range
    wcets = rng.integers(wlo, whi + 1, size=n)
    return build_dag([(v, int(wcets[v])) for v in range(n)], edges)


def gen_dag(cfg: GenConfig, seed: int | None = None) -> DagTask:
    """One random DAG task; deterministic given (cfg, seed)."""
    return _gen_dag(cfg, _rng_for(cfg, seed))


def _gen_task(cfg: GenConfig, rng: np.random.Generator) -> SporadicTask:
    g = _gen_dag(cfg, rng)
    alpha = float(rng.uniform(*cfg.alpha_range))
    length = longest_path(g).length
    period = length + alpha * (volume(g) - length)
    return SporadicTask(graph=g, deadline=period, period=period)


def gen_task(cfg: GenConfig, seed: int | None = None) -> SporadicTask:
    """One sporadic task with implicit deadline D = T >= len(G)."""
    return _gen_task(cfg, _rng_for(cfg, seed))


def gen_task_set(cfg: GenConfig, nu: float, m: int,
                 seed: int | None = None) -> TaskSet:
    """Append random tasks until total utilization reaches ``nu * m``.

    The overshooting final task is kept, so the realized utilization lies
    in [nu*m, nu*m + u_last); at least one task is always generated.
    """
    if not 0 <= nu <= 1:
        raise ValueError(f"normalized utilization must lie in [0, 1], got {nu}")
    if m < 1:
        raise ValueError(f"core count must be >= 1, got {m}")
    rng = _rng_for(cfg, seed)
    target = nu * m
    tasks: list[SporadicTask] = []
    total = 0.0
    while not tasks or total < target:
        task = _gen_task(cfg, rng)
        tasks.append(task)
        total += task.utilization
    return TaskSet(tuple(tasks))
