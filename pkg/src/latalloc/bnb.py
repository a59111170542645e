"""Depth-first branch and bound over per-group activation counts.

Copies within a group are interchangeable, so a branching step commits a
whole group at once: choosing the costliest group with free copies and
emitting one child per number l of copies switched on (the rest switched
off) keeps permutations of identical copies out of the tree.  A binary mode
that fixes one copy at a time is retained purely for comparison; with all
multiplicities 1 the two trees coincide.

Nodes carry (on, off) count tuples.  A child inherits its parent's bound
until popped; it is then either pruned on that inherited bound without any
work, discarded as infeasible, or priced by the continuous relaxation.  When
the relaxation of a node splits the demand only across committed or fully
loaded copies, the node is solved: re-solving the restricted problem on the
support tightens the incumbent and the node closes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .heuristic import primal_heuristic
from .kkt import _counts_solve, _counts_to_dense, solve_constant_latency
from .model import Allocation, Instance
from .relax import _solve_relaxation

# A node is pruned when its bound cannot undercut the incumbent by more than
# this relative slack.
PRUNE_RTOL = 1e-9
# Threshold for treating a relaxation fraction as integral.
INTEGRAL_TOL = 1e-12


@dataclass(frozen=True)
class BnbNode:
    """Subproblem: per-group counts of copies fixed on and fixed off.

    ``lower_bound`` is the best bound known for the node; children are
    created with the parent's bound and tightened when evaluated.
    """

    on_counts: tuple
    off_counts: tuple
    lower_bound: float
    depth: int


@dataclass
class SolveStats:
    nodes: int = 0
    bound_evals: int = 0
    incumbent_updates: int = 0
    wall_time: float = 0.0
    status: str = "optimal"


@dataclass(frozen=True)
class SolveOptions:
    branching: str = "nary"          # "nary" | "binary"
    node_limit: int | None = None
    time_limit: float | None = None  # seconds
    trace: object | None = None      # file-like; one line per evaluated node


def branch_children(node: BnbNode, instance: Instance, branching: str = "nary"):
    """Children of ``node``, most-active first.

    Picks the group with the largest fixed cost among those with free copies
    (ties to the lowest index) and fixes all its n free copies, emitting n+1
    children with (on, off) increments (n,0), (n-1,1), ..., (0,n).  Binary
    branching fixes a single copy instead (increments (1,0), (0,1)).
    """
    if branching not in ("nary", "binary"):
        raise ValueError(f"unknown branching mode {branching!r}")
    mult = instance.multiplicities
    c = instance.group_fixed_costs
    best = -1
    best_c = None
    for g in range(len(mult)):
        if node.on_counts[g] + node.off_counts[g] < mult[g]:
            if best_c is None or c[g] > best_c:
                best, best_c = g, c[g]
    if best < 0:
        raise ValueError("node has no free copy to branch on")
    n_free = mult[best] - node.on_counts[best] - node.off_counts[best]
    n = 1 if branching == "binary" else n_free
    children = []
    for l in range(n, -1, -1):
        on = list(node.on_counts)
        off = list(node.off_counts)
        on[best] += l
        off[best] += n - l
        children.append(BnbNode(tuple(on), tuple(off), node.lower_bound, node.depth + 1))
    return children


def _prune_gap(incumbent):
    return PRUNE_RTOL * max(1.0, abs(incumbent))


def solve(instance: Instance, options: SolveOptions | None = None):
    """Exact minimizer of the activation-plus-latency cost.  Returns (Allocation, SolveStats).

    The incumbent starts from the primal heuristic; the search then prices
    nodes depth-first with the continuous relaxation and prunes anything
    that cannot improve the incumbent beyond a 1e-9 relative slack.
    Deterministic for fixed inputs and options whenever no time limit is set.
    All-constant-latency instances route to the closed-form fast path.
    """
    options = options or SolveOptions()
    t0 = time.perf_counter()

    if instance.all_constant:
        alloc = solve_constant_latency(instance)
        return alloc, SolveStats(nodes=1, bound_evals=1, incumbent_updates=1,
                                 wall_time=time.perf_counter() - t0, status="optimal")

    nG = len(instance.groups)
    mult_arr = np.asarray(instance.multiplicities, dtype=np.intp)
    c_group = instance.group_fixed_costs
    c_copy = instance.copy_fixed_cost
    copy_group = instance.copy_group
    copy_pos = instance.copy_pos

    heur = primal_heuristic(instance)
    inc_value = heur.value
    inc_x = np.asarray(heur.x, dtype=float).copy()
    stats = SolveStats(incumbent_updates=1)
    trace = options.trace

    def evaluate(on_counts, off_counts):
        """Relaxation bound and fractions of a node, or None when infeasible."""
        on_arr = np.asarray(on_counts, dtype=np.intp)
        off_arr = np.asarray(off_counts, dtype=np.intp)
        on_mask = copy_pos < on_arr[copy_group]
        avail_mask = copy_pos < (mult_arr - off_arr)[copy_group]
        if not avail_mask.any():
            return None
        kappa = np.where(on_mask, 0.0, c_copy)
        _, x, obj = _solve_relaxation(instance, kappa, avail_mask)
        bound = obj + float(on_arr @ c_group)
        free_mask = avail_mask & ~on_mask
        return bound, x, free_mask

    root = BnbNode((0,) * nG, (0,) * nG, -np.inf, 0)
    stack = [root]
    stats.nodes = 1

    while stack:
        if (options.node_limit is not None and stats.nodes >= options.node_limit
                and stats.bound_evals >= 1):
            stats.status = "node_limit"
            break
        if options.time_limit is not None and time.perf_counter() - t0 > options.time_limit:
            stats.status = "time_limit"
            break
        node = stack.pop()
        if node.lower_bound >= inc_value - _prune_gap(inc_value):
            continue  # pruned on the inherited bound, no evaluation needed
        ev = evaluate(node.on_counts, node.off_counts)
        if ev is None:
            continue  # no available copy: infeasible subproblem
        bound, x, free_mask = ev
        stats.bound_evals += 1
        if trace is not None:
            trace.write(f"depth={node.depth} bound={bound:.12g} incumbent={inc_value:.12g}\n")
        if bound >= inc_value - _prune_gap(inc_value):
            continue
        xf = x[free_mask]
        if np.all((xf <= INTEGRAL_TOL) | (xf >= 1.0 - INTEGRAL_TOL)):
            # relaxation already integral for the free copies: close the node
            # by re-solving exactly on its support
            counts = np.bincount(copy_group[x > 0.0], minlength=nG)
            _, x_groups, exact = _counts_solve(instance, counts)
            if exact < inc_value:
                inc_value = exact
                inc_x = _counts_to_dense(instance, counts, x_groups)
                stats.incumbent_updates += 1
            continue
        node = BnbNode(node.on_counts, node.off_counts, bound, node.depth)
        children = branch_children(node, instance, options.branching)
        stats.nodes += len(children)
        stack.extend(reversed(children))

    stats.wall_time = time.perf_counter() - t0
    return Allocation.from_fractions(instance, inc_x), stats
