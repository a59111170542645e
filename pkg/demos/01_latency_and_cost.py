"""
What a resource costs
=====================

A resource charges a fixed activation fee the moment it carries any load,
plus a congestion term: carrying fraction x costs x * f(x) on top of the
fee.  This script prices a few splits by hand to build intuition for why
the best split equalizes marginal costs rather than loads.
"""

import numpy as np

from latalloc import Allocation, Instance, PowerLatency, ResourceGroup

# three resources: cheap-to-open ones congest quickly
inst = Instance.from_groups([
    ResourceGroup(3.0, PowerLatency(1.0, 1.0)),
    ResourceGroup(2.0, PowerLatency(2.0, 1.0)),
    ResourceGroup(1.0, PowerLatency(3.0, 1.0)),
])

candidates = {
    "all on resource 0": [1.0, 0.0, 0.0],
    "all on resource 2": [0.0, 0.0, 1.0],
    "even three-way":    [1 / 3, 1 / 3, 1 / 3],
    "open 0 and 2":      [0.75, 0.0, 0.25],
}

for name, x in candidates.items():
    alloc = Allocation.from_fractions(inst, np.array(x))
    print(f"{name:20s} cost {alloc.value:.4f}   open {sorted(alloc.active)}")

# the marginal of carrying z on resource i is f(z) + z f'(z); with
# f(z) = b z that is 2 b z, and the 0.75 / 0.25 split above makes the two
# open resources agree: 2*1*0.75 == 2*3*0.25 == 1.5
g0 = inst.groups[0].latency.marginal(0.75)
g2 = inst.groups[2].latency.marginal(0.25)
print(f"\nmarginals at the good split: {g0:.3f} and {g2:.3f}")

# steeper congestion, same fee: the marginal now grows like z**2
steep = PowerLatency(1.0, 2.0)
for z in (0.2, 0.5, 1.0):
    print(f"p=2 latency at z={z}: f={steep.f(z):.3f}  marginal={steep.marginal(z):.3f}")
