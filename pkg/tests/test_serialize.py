from __future__ import annotations

import pytest

from dagrta.federated import SporadicTask, TaskSet
from dagrta.graph import longest_path, volume
from dagrta.optimizer import optimize
from dagrta.serialize import (
    dag_from_dict,
    dag_to_dict,
    dumps,
    load,
    load_dag,
    load_task,
    load_taskset,
    save,
    task_from_dict,
    task_to_dict,
    taskset_from_dict,
    taskset_to_dict,
)


class TestDagRoundTrip:
    def test_identity(self, e1):
        g = dag_from_dict(dag_to_dict(e1))
        assert g.wcets == e1.wcets
        assert g.succ == e1.succ
        assert g.source == e1.source and g.sink == e1.sink

    def test_schema_shape(self, e1):
        doc = dag_to_dict(e1)
        assert doc["vertices"][0] == {"id": 0, "wcet": 1}
        assert [0, 1] in doc["edges"]
        assert "deadline" not in doc

    def test_added_edges_field(self, e1):
        result = optimize(e1, limit=6)
        doc = dag_to_dict(result.graph, added_edges=result.added_edges)
        assert doc["added_edges"] == [[2, 3]]
        assert [2, 3] in doc["edges"]  # full edge set includes the addition
        g = dag_from_dict(doc)
        assert g.has_edge(2, 3)

    def test_malformed_document(self):
        with pytest.raises(ValueError, match="malformed"):
            dag_from_dict({"edges": []})

    def test_file_round_trip(self, e1, tmp_path):
        path = tmp_path / "task.json"
        save(dag_to_dict(e1), path)
        g = load_dag(path)
        assert volume(g) == 10 and longest_path(g).length == 6

    def test_dumps_is_stable(self, e1):
        assert dumps(dag_to_dict(e1)) == dumps(dag_to_dict(e1))
        assert dumps(dag_to_dict(e1)).endswith("\n")


class TestTaskRoundTrip:
    def test_identity(self, e1):
        t = SporadicTask(graph=e1, deadline=7, period=9)
        back = task_from_dict(task_to_dict(t))
        assert back.deadline == 7 and back.period == 9
        assert back.graph.wcets == e1.wcets

    def test_deadline_required(self, e1):
        with pytest.raises(ValueError, match="deadline"):
            task_from_dict(dag_to_dict(e1))

    def test_period_defaults_to_deadline(self, e1):
        doc = dag_to_dict(e1, deadline=8)
        assert task_from_dict(doc).period == 8

    def test_taskset_round_trip(self, e1, e2, tmp_path):
        ts = TaskSet((
            SporadicTask(e1, deadline=7, period=7),
            SporadicTask(e2, deadline=8, period=9),
        ))
        path = tmp_path / "ts.json"
        save(taskset_to_dict(ts), path)
        back = load_taskset(path)
        assert len(back) == 2
        assert back.tasks[1].period == 9

    def test_taskset_requires_tasks_key(self):
        with pytest.raises(ValueError, match="tasks"):
            taskset_from_dict({})

    def test_load_task(self, e1, tmp_path):
        path = tmp_path / "t.json"
        save(task_to_dict(SporadicTask(e1, deadline=7, period=7)), path)
        assert load_task(path).deadline == 7
        assert load(path)["deadline"] == 7
