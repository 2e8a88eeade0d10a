from __future__ import annotations

import numpy as np
import pytest

from dagrta.bounds import extract_path_list, graham_bound, multipath_bound
from dagrta.graph import (
    is_generalized_path,
    length_tables,
    longest_path,
    residue,
    validate_dag,
    volume,
)
from dagrta.optimizer import (
    add_edge_pass,
    check_principle2,
    check_principle3,
    optimize,
    optimize_for_bound,
)
from oracle import random_raw_dag


class TestPrinciple2:
    def test_accepting_edge(self, e1):
        # inserting (2, 3) keeps the longest path at 6
        assert check_principle2(length_tables(e1), 2, 3, limit=6)

    def test_rejecting_edge(self, e1):
        # (1, 3) would stretch the longest path to 8
        assert not check_principle2(length_tables(e1), 1, 3, limit=6)

    def test_deadline_relaxation(self, e2):
        # under limit = D = 7 the same edge becomes admissible
        assert check_principle2(length_tables(e2), 2, 3, limit=7)
        assert not check_principle2(length_tables(e2), 2, 3, limit=6)


class TestPrinciple3:
    def test_accepting_edge(self, e1):
        r = residue(e1, longest_path(e1))
        tables = length_tables(r)
        assert tables.left[2] == 1 and tables.right[3] == 3
        assert check_principle3(tables, 2, 3, longest_path(r).length)

    def test_equal_length_rejected(self, e1):
        # first iteration: el(3)+er(4) = 6 = len, no strict growth
        r = residue(e1, ())
        assert not check_principle3(length_tables(r), 3, 4,
                                    longest_path(r).length)

    def test_zero_extension_rejected(self, e1):
        r = residue(e1, range(6))
        assert not check_principle3(length_tables(r), 2, 3,
                                    longest_path(r).length)


class TestAddEdgePass:
    def test_first_iteration_adds_nothing(self, e1):
        r = residue(e1, ())
        g2, r2, edge = add_edge_pass(longest_path(r), e1, r, limit=6)
        assert edge is None
        assert g2 is e1 and r2 is r

    def test_second_iteration_adds_edge(self, e1):
        r = residue(e1, longest_path(e1))
        g2, r2, edge = add_edge_pass(longest_path(r), e1, r, limit=6)
        assert edge == (2, 3)
        assert g2.has_edge(2, 3) and r2.base.has_edge(2, 3)
        assert r2.effective == r.effective
        # residue longest path strictly lengthened (progress)
        assert longest_path(r2).length > longest_path(r).length

    def test_two_vertex_chain_has_no_candidates(self):
        from dagrta.graph import build_dag

        g = build_dag([("a", 1), ("b", 2)], [("a", "b")])
        r = residue(g, ())
        _, _, edge = add_edge_pass(longest_path(r), g, r, limit=3)
        assert edge is None


class TestOptimize:
    def test_example_bound_preserving(self, e1):
        result = optimize(e1, limit=6)
        assert result.added_edges == ((2, 3),)
        assert [(p.vertices, p.length) for p in result.path_list] == [
            ((0, 1, 4, 5), 6), ((2, 3), 4)
        ]
        assert multipath_bound(result.graph, result.path_list, 2) == 6
        assert longest_path(result.graph).length == 6
        validate_dag(result.graph)

    def test_chain_untouched(self, chain):
        result = optimize(chain, limit=volume(chain))
        assert result.added_edges == ()
        assert len(result.path_list) == 1

    def test_deadline_limit_on_second_profile(self, e2):
        result = optimize(e2, limit=7)
        assert result.added_edges == ((2, 3),)
        assert result.path_list.lengths == (6, 5)
        assert longest_path(result.graph).length == 7  # grew, but stays <= D

    def test_limit_below_len_rejected(self, e1):
        with pytest.raises(ValueError, match="limit"):
            optimize(e1, limit=5)

    def test_limit_above_vol_rejected(self, e1):
        with pytest.raises(ValueError, match="limit"):
            optimize(e1, limit=11)

    def test_limit_equal_vol_serializes(self, e1):
        # the graph degenerates to one sequential path
        result = optimize(e1, limit=10)
        assert result.path_list.lengths == (10,)

    def test_input_graph_untouched(self, e1):
        optimize(e1, limit=6)
        assert not e1.has_edge(2, 3)

    def test_structural_properties(self):
        rng = np.random.default_rng(31)
        for _ in range(150):
            g = random_raw_dag(rng)
            if volume(g) == 0:
                continue
            base_len = longest_path(g).length
            limit = float(base_len + rng.integers(0, max(1, volume(g) - base_len + 1)))
            limit = min(limit, volume(g))
            result = optimize(g, limit)
            g2 = result.graph
            validate_dag(g2)
            assert volume(g2) == volume(g)
            # every added edge exists and the graph stays acyclic
            for u, v in result.added_edges:
                assert g2.has_edge(u, v)
            # limit respected post hoc
            assert longest_path(g2).length <= limit + 1e-9
            # emitted list: disjoint, exhaustive, generalized paths of G'
            assert sum(p.length for p in result.path_list) == volume(g)
            seen = set()
            for p in result.path_list:
                assert not (seen & set(p.vertices))
                seen |= set(p.vertices)
                assert is_generalized_path(g2, p.vertices)
            # progress: every insertion strictly lengthened the residue
            for rec in result.insertions:
                assert rec.residue_len_after > rec.residue_len_before

    def test_length_preserved_at_len_limit(self):
        rng = np.random.default_rng(32)
        for _ in range(150):
            g = random_raw_dag(rng)
            if volume(g) == 0:
                continue
            result = optimize(g, longest_path(g).length)
            assert longest_path(result.graph).length == longest_path(g).length


class TestOptimizeForBound:
    def test_example_graph(self, e1):
        result, bound = optimize_for_bound(e1, 2)
        assert bound == 6
        assert result.added_edges == ((2, 3),)

    def test_single_core_gives_volume(self, e1):
        _, bound = optimize_for_bound(e1, 1)
        assert bound == 10

    def test_second_profile_dominated(self, e2):
        _, bound = optimize_for_bound(e2, 2)
        assert bound <= 8

    def test_domination_over_random_graphs(self):
        rng = np.random.default_rng(33)
        strict = total = 0
        for _ in range(120):
            g = random_raw_dag(rng)
            if volume(g) == 0:
                continue
            paths = extract_path_list(g)
            for m in (2, 4, 8):
                path_bound = multipath_bound(g, paths, m)
                _, our = optimize_for_bound(g, m)
                assert our <= path_bound + 1e-9
                assert path_bound <= graham_bound(g, m) + 1e-9
                assert our >= longest_path(g).length - 1e-9
                total += 1
                strict += our < path_bound - 1e-9
        assert strict > 0  # improvements do happen on small graphs
