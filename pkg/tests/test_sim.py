from __future__ import annotations

import numpy as np
import pytest

from dagrta.bounds import extract_path_list, graham_bound, multipath_bound
from dagrta.graph import build_dag, longest_path, volume
from dagrta.optimizer import optimize_for_bound
from dagrta.sim import (
    BoundViolationError,
    check_trace,
    simulate,
    validate_bound,
)
from oracle import random_raw_dag


class TestSimulate:
    def test_reference_schedule_of_example(self, e1):
        # dispatching the short branches first reproduces the makespan-7 schedule
        trace = simulate(e1, 2, priority=[0, 2, 3, 1, 4, 5])
        assert trace.makespan == 7
        check_trace(e1, trace)

    def test_added_edge_enables_makespan_six(self, e1_prime):
        trace = simulate(e1_prime, 2, priority=[0, 1, 2, 3, 4, 5])
        assert trace.makespan == 6
        check_trace(e1_prime, trace)

    def test_enough_cores_reach_longest_path(self):
        rng = np.random.default_rng(51)
        for _ in range(30):
            g = random_raw_dag(rng)
            trace = simulate(g, g.n, priority=list(range(g.n)))
            assert trace.makespan == longest_path(g).length

    def test_single_core_runs_sequentially(self, chain):
        trace = simulate(chain, 1, priority=[4, 3, 2, 1, 0])
        assert trace.makespan == volume(chain)

    def test_invalid_priority_rejected(self, e1):
        with pytest.raises(ValueError, match="permutation"):
            simulate(e1, 2, priority=[0, 1, 2])
        with pytest.raises(ValueError, match="permutation"):
            simulate(e1, 2, priority=[0, 0, 1, 2, 3, 4])

    def test_zero_cores_rejected(self, e1):
        with pytest.raises(ValueError, match="core count"):
            simulate(e1, 0, priority=[0, 1, 2, 3, 4, 5])

    def test_trace_invariants_on_random_runs(self):
        rng = np.random.default_rng(52)
        for _ in range(60):
            g = random_raw_dag(rng)
            m = int(rng.integers(1, 5))
            trace = simulate(g, m, rng.permutation(g.n).tolist())
            check_trace(g, trace)
            assert trace.makespan == max(trace.finishes)

    def test_deterministic(self, e1):
        a = simulate(e1, 2, [0, 2, 3, 1, 4, 5])
        b = simulate(e1, 2, [0, 2, 3, 1, 4, 5])
        assert a == b

    def test_gantt_rows_cover_all_vertices(self, e1):
        trace = simulate(e1, 2, [0, 1, 2, 3, 4, 5])
        rows = trace.rows()
        assert sorted(r[0] for r in rows) == list(range(6))
        assert all(len(r) == 4 for r in rows)


class TestCheckTrace:
    def test_detects_overlap_violation(self, e1):
        trace = simulate(e1, 2, [0, 1, 2, 3, 4, 5])
        bad = type(trace)(
            starts=trace.starts, finishes=trace.finishes, cores=trace.cores,
            core_count=1, makespan=trace.makespan,
        )
        with pytest.raises(AssertionError):
            check_trace(e1, bad)

    def test_detects_idle_core_violation(self, e1):
        # delay a branch vertex artificially: a core sits idle while it waits
        trace = simulate(e1, 2, [0, 2, 3, 1, 4, 5])
        starts = list(trace.starts)
        finishes = list(trace.finishes)
        starts[1] += 1  # vertex 1 was eligible at t=1 but now starts at 3
        finishes[1] += 1
        starts[4] += 1
        finishes[4] += 1
        starts[5] += 1
        finishes[5] += 1
        bad = type(trace)(
            starts=tuple(starts), finishes=tuple(finishes), cores=trace.cores,
            core_count=2, makespan=finishes[5],
        )
        with pytest.raises(AssertionError, match="work conservation"):
            check_trace(e1, bad)


class TestValidateBound:
    def test_sound_bound_respected(self, e1):
        report = validate_bound(e1, 2, bound=7, trials=100, seed=0)
        assert report.max_makespan <= 7

    def test_optimized_graph_respects_smaller_bound(self, e1_prime):
        report = validate_bound(e1_prime, 2, bound=6, trials=100, seed=0)
        assert report.max_makespan <= 6

    def test_unsound_bound_raises(self, chain):
        with pytest.raises(BoundViolationError):
            validate_bound(chain, 1, bound=volume(chain) - 1, trials=5, seed=0)

    def test_chain_hits_volume_exactly(self, chain):
        report = validate_bound(chain, 1, bound=volume(chain), trials=5, seed=0)
        assert report.max_makespan == volume(chain)

    def test_zero_trials_rejected(self, e1):
        with pytest.raises(ValueError, match="trials"):
            validate_bound(e1, 2, bound=7, trials=0)

    def test_bounds_hold_on_random_graphs(self):
        # spot-check soundness: simulated makespan below PATH/OUR/Graham bounds
        rng = np.random.default_rng(53)
        for _ in range(25):
            g = random_raw_dag(rng)
            if volume(g) == 0:
                continue
            paths = extract_path_list(g)
            for m in (2, 4):
                validate_bound(g, m, graham_bound(g, m), trials=10, seed=1)
                validate_bound(g, m, multipath_bound(g, paths, m), trials=10, seed=2)
                result, our = optimize_for_bound(g, m)
                validate_bound(result.graph, m, our, trials=10, seed=3)
