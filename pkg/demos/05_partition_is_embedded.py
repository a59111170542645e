"""
Why no fast exact algorithm exists
==================================

Any integer weight list embeds into an instance whose optimum equals the
weight total W exactly when the list splits into two equal halves.
Solving our problem to optimality therefore answers an NP-complete
question, which is the licence for branch and bound plus a heuristic.
"""

from latalloc import partition_reduction, solve

cases = [
    (2, 3, 5, 4),      # splits: 2+5 = 3+4 = 7
    (1, 1),            # trivially splits
    (1, 1, 3),         # odd total, cannot split
    (2, 3, 7),         # even total, still cannot split
    (8, 7, 6, 5, 4),   # 8+7 = 6+5+4 = 15
]

for weights in cases:
    W = sum(weights)
    alloc, _ = solve(partition_reduction(weights))
    verdict = "splits" if abs(alloc.value - W) <= 1e-9 * W else "does not split"
    print(f"{str(weights):20s} W={W:<4} optimum={alloc.value:.6f}  -> {verdict}")

# on a no-instance the optimum stays strictly above W; the surplus is the
# price of the best unbalanced subset
alloc, _ = solve(partition_reduction((1, 1, 3)))
print(f"\nsurplus over W on (1,1,3): {alloc.value - 5:.6f}")
