"""Primal heuristic: seeded walks, strategies, improvement traces."""

import pytest

from latalloc import generate_base, generate_random, primal_heuristic, solve
from latalloc import ConstantLatency, Instance, ResourceGroup
from latalloc import continuous_relaxation_bound

from conftest import make_instance, random_corpus


def test_frozen_walk_trace(ladder3):
    # seed is all three resources at 72/11; dropping c=3 gives 21/5, dropping
    # c=2 gives 4, and no further move improves
    acc = []
    a = primal_heuristic(ladder3, strategy="fixed_cost", accepted_values=acc)
    assert acc == pytest.approx([4.2, 4.0], abs=1e-12)
    assert a.value == pytest.approx(4.0, abs=1e-12)
    assert a.active == frozenset({2})


def test_trace_strictly_decreasing(ladder3):
    for inst in random_corpus(20, 2, 12, 8800):
        acc = []
        primal_heuristic(inst, strategy="fixed_cost", accepted_values=acc)
        assert all(b < a for a, b in zip(acc, acc[1:]))


def test_single_resource():
    inst = make_instance([(2.5, 1.5)])
    a = primal_heuristic(inst)
    assert a.value == pytest.approx(4.0, abs=1e-12)
    assert a.active == frozenset({0})


def test_zero_cost_identical_uses_every_copy():
    inst = make_instance([(0, 2, 5)])
    a = primal_heuristic(inst)
    assert a.active == frozenset(range(5))
    assert a.value == pytest.approx(2.0 / 5.0, abs=1e-12)


def test_never_empty_and_feasible():
    for inst in random_corpus(25, 1, 10, 4400):
        a = primal_heuristic(inst)
        assert len(a.active) >= 1
        assert float(a.x.sum()) == pytest.approx(1.0, abs=1e-9)


def test_sandwich_against_exact_and_bound():
    for inst in random_corpus(25, 2, 20, 5500):
        h = primal_heuristic(inst)
        alloc, _ = solve(inst)
        root = continuous_relaxation_bound(inst)
        slack = 1e-9 * max(1.0, abs(alloc.value))
        assert h.value >= alloc.value - slack
        assert alloc.value >= root.bound - slack


def test_strategies_agree_on_base():
    inst = generate_base(25)
    va = primal_heuristic(inst, strategy="auto").value
    vf = primal_heuristic(inst, strategy="fixed_cost").value
    vp = primal_heuristic(inst, strategy="power").value
    assert va == pytest.approx(vp, abs=1e-12)
    # the tailored walks never do worse than the plain one
    assert vp <= vf + 1e-12


def test_power_strategy_reaches_singleton_optimum():
    # best solution is the single fastest resource, which the plain walk
    # cannot reach from the cheap-activation seed
    inst = generate_random(12, seed=1001)
    vf = primal_heuristic(inst, strategy="fixed_cost").value
    vp = primal_heuristic(inst, strategy="power").value
    alloc, _ = solve(inst)
    assert vp == pytest.approx(alloc.value, rel=1e-12)
    assert vf > alloc.value + 1.0  # the plain criterion genuinely misses here

def test_unknown_strategy():
    with pytest.raises(ValueError):
        primal_heuristic(make_instance([(1, 1)]), strategy="annealing")


def test_constant_family_rejected():
    inst = Instance.from_groups([ResourceGroup(1.0, ConstantLatency(2.0))])
    with pytest.raises(ValueError):
        primal_heuristic(inst)
