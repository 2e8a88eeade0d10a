"""JSON task-file round-tripping shared by the CLI, experiments and tests.

Task files carry vertices, edges and optionally a deadline/period:

    {"vertices": [{"id": 0, "wcet": 1}, ...],
     "edges": [[0, 1], ...],
     "deadline": 7, "period": 7}

Graphs emitted after optimization use the same schema with the full edge
set plus an ``added_edges`` list naming the inserted subset.  Task-set
files wrap task objects: ``{"tasks": [...]}``.  All dumps are
byte-stable (sorted keys, sorted edges, fixed separators).
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .federated import SporadicTask, TaskSet
from .graph import DagTask, build_dag


def dag_to_dict(g: DagTask, added_edges: tuple[tuple[int, int], ...] | None = None,
                deadline: float | None = None, period: float | None = None) -> dict:
    doc: dict = {
        "vertices": [{"id": v, "wcet": g.wcets[v]} for v in range(g.n)],
        "edges": sorted([list(e) for e in g.edge_list()]),
    }
    if added_edges is not None:
        doc["added_edges"] = sorted([list(e) for e in added_edges])
    if deadline is not None:
        doc["deadline"] = deadline
    if period is not None:
        doc["period"] = period
    return doc


def dag_from_dict(doc: dict) -> DagTask:
    try:
        vertices = [(v["id"], v["wcet"]) for v in doc["vertices"]]
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed task document: {exc}") from exc
    return build_dag(vertices, edges)


def task_to_dict(task: SporadicTask) -> dict:
    return dag_to_dict(task.graph, deadline=task.deadline, period=task.period)


def task_from_dict(doc: dict) -> SporadicTask:
    if "deadline" not in doc:
        raise ValueError("task document has no deadline")
    deadline = doc["deadline"]
    return SporadicTask(
        graph=dag_from_dict(doc),
        deadline=deadline,
        period=doc.get("period", deadline),
    )


def taskset_to_dict(ts: TaskSet) -> dict:
    return {"tasks": [task_to_dict(t) for t in ts.tasks]}


def taskset_from_dict(doc: dict) -> TaskSet:
    if "tasks" not in doc:
        raise ValueError("task-set document has no tasks list")
    return TaskSet(tuple(task_from_dict(t) for t in doc["tasks"]))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save(doc: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def load(path: Union[str, Path]) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def load_dag(path: Union[str, Path]) -> DagTask:
    return dag_from_dict(load(path))


def load_task(path: Union[str, Path]) -> SporadicTask:
    return task_from_dict(load(path))


def load_taskset(path: Union[str, Path]) -> TaskSet:
    return taskset_from_dict(load(path))
