"""
How many identical copies to switch on
======================================

With q interchangeable copies of one resource the only question is the
count k: cost is k fees plus the congestion of an even 1/k split.  Cheap
fees favour many copies, expensive fees favour one.
"""

from latalloc import ConstantLatency, Instance, PowerLatency, ResourceGroup
from latalloc import solve_constant_latency, solve_identical

fam = PowerLatency(1.0, 1.0)

print("fee      best k   total cost")
for fee in (0.001, 0.01, 0.05, 0.2, 1.0, 5.0):
    k, value = solve_identical(fee, fam, 50)
    print(f"{fee:<8} {k:<8} {value:.4f}")

# the staircase collapses to k=1 once the fee dwarfs the congestion saving
# and to k=q when activation is free
k_free, v_free = solve_identical(0.0, fam, 50)
print(f"\nfree activation: k={k_free} of 50, cost {v_free:.4f}")

# flat latencies are even simpler: load placement does not matter, so the
# answer is just the cheapest fee-plus-latency resource
flat = Instance.from_groups([
    ResourceGroup(4.0, ConstantLatency(1.0)),
    ResourceGroup(2.0, ConstantLatency(2.5)),
    ResourceGroup(1.0, ConstantLatency(4.5)),
])
alloc = solve_constant_latency(flat)
print(f"flat case: open copy {sorted(alloc.active)} at cost {alloc.value}")
