"""Branch-and-bound driver: branching schemes, pruning, limits, statistics."""

import io

import numpy as np
import pytest

from latalloc import (
    BnbNode,
    SolveOptions,
    SolveStats,
    branch_children,
    generate_random,
    solve,
    solve_constant_latency,
)
from latalloc import ConstantLatency, Instance, ResourceGroup

from conftest import make_instance, random_corpus


class TestBranchChildren:
    def test_group_branch_counts(self):
        inst = make_instance([(5, 1, 3), (1, 2, 2)])
        node = BnbNode(on_counts=(0, 0), off_counts=(0, 0), lower_bound=0.0, depth=0)
        kids = branch_children(node, inst)
        # group 0 has the larger fixed cost: all 3 free copies get fixed
        assert [(k.on_counts[0], k.off_counts[0]) for k in kids] == [
            (3, 0), (2, 1), (1, 2), (0, 3)]
        assert all(k.depth == 1 for k in kids)

    def test_binary_branch(self):
        inst = make_instance([(5, 1, 3), (1, 2, 2)])
        node = BnbNode((0, 0), (0, 0), 0.0, 0)
        kids = branch_children(node, inst, branching="binary")
        assert [(k.on_counts[0], k.off_counts[0]) for k in kids] == [(1, 0), (0, 1)]

    def test_partially_fixed_group(self):
        inst = make_instance([(5, 1, 4)])
        node = BnbNode((1,), (1,), 0.0, 2)
        kids = branch_children(node, inst)
        # two copies remain free
        assert [(k.on_counts[0], k.off_counts[0]) for k in kids] == [(3, 1), (2, 2), (1, 3)]

    def test_skips_exhausted_groups(self):
        inst = make_instance([(5, 1, 2), (1, 2, 2)])
        node = BnbNode((2, 0), (0, 0), 0.0, 1)
        kids = branch_children(node, inst)
        # group 0 fully fixed on, so branching moves to group 1
        assert [(k.on_counts[1], k.off_counts[1]) for k in kids] == [(2, 0), (1, 1), (0, 2)]

    def test_bad_mode(self):
        inst = make_instance([(1, 1)])
        with pytest.raises(ValueError):
            branch_children(BnbNode((0,), (0,), 0.0, 0), inst, branching="ternary")


class TestSolve:
    def test_ladder_optimum(self, ladder3):
        alloc, stats = solve(ladder3)
        assert alloc.value == pytest.approx(4.0, abs=1e-12)
        assert alloc.active == frozenset({2})
        assert stats.status == "optimal"
        assert stats.nodes >= 1 and stats.bound_evals >= 1

    def test_single_resource(self):
        alloc, stats = solve(make_instance([(2, 3)]))
        assert alloc.value == pytest.approx(5.0, abs=1e-12)
        assert stats.status == "optimal"

    def test_zero_cost_spreads_everything(self):
        alloc, stats = solve(make_instance([(0, 1, 4)]))
        assert alloc.active == frozenset(range(4))
        assert alloc.value == pytest.approx(0.25, abs=1e-12)

    def test_branching_modes_agree_in_value(self):
        for inst in random_corpus(15, 2, 10, 6600):
            va, _ = solve(inst)
            vb, _ = solve(inst, SolveOptions(branching="binary"))
            assert va.value == pytest.approx(vb.value, rel=1e-9)

    def test_multiplicity_one_trees_identical(self):
        # with one copy per group both schemes fix a single copy per branch
        for s in range(10):
            inst = generate_random(6 + s, seed=3000 + s, multiplicity_range=(1, 1))
            _, sn = solve(inst)
            _, sb = solve(inst, SolveOptions(branching="binary"))
            assert (sn.nodes, sn.bound_evals) == (sb.nodes, sb.bound_evals)

    def test_group_branching_saves_nodes_with_repeats(self):
        inst = generate_random(12, seed=4321, multiplicity_range=(2, 4))
        _, sn = solve(inst)
        _, sb = solve(inst, SolveOptions(branching="binary"))
        assert sn.nodes < sb.nodes

    def test_node_limit(self, ladder3):
        alloc, stats = solve(ladder3, SolveOptions(node_limit=1))
        assert stats.status == "node_limit"
        assert stats.bound_evals >= 1
        # the incumbent is still a feasible allocation
        assert float(alloc.x.sum()) == pytest.approx(1.0, abs=1e-9)

    def test_time_limit_zero(self, ladder3):
        alloc, stats = solve(ladder3, SolveOptions(time_limit=0.0))
        assert stats.status == "time_limit"
        assert float(alloc.x.sum()) == pytest.approx(1.0, abs=1e-9)

    def test_trace_lines(self, ladder3):
        buf = io.StringIO()
        solve(ladder3, SolveOptions(trace=buf))
        lines = buf.getvalue().strip().splitlines()
        assert len(lines) >= 1
        assert all("depth=" in ln and "bound=" in ln and "incumbent=" in ln for ln in lines)

    def test_all_constant_routes_to_fast_path(self):
        inst = Instance.from_groups([
            ResourceGroup(2.0, ConstantLatency(1.0)),
            ResourceGroup(1.0, ConstantLatency(1.5)),
        ])
        alloc, stats = solve(inst)
        ref = solve_constant_latency(inst)
        assert alloc.value == ref.value
        assert stats.nodes == 1 and stats.bound_evals == 1

    def test_stats_counts_consistent(self):
        for inst in random_corpus(10, 3, 12, 7700):
            _, stats = solve(inst)
            assert stats.bound_evals <= stats.nodes
            assert stats.incumbent_updates >= 1
            assert stats.wall_time >= 0.0
