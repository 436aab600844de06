"""Moving witnesses between the fuzzy level and the compact-set level.

A fuzzy set u close to chi_K in the endograph metric has an alpha-level close
to K; if f^n(u) is also close to chi_L, that same level carries the compact
witness.  In the other direction, compact witnesses for each level of u
assemble into a fuzzy witness.
"""

import random

from fuzzydyn.analysis import lift_transitivity_witness, project_transitivity_witness
from fuzzydyn.generators import lift_instance, transitivity_instance

rng = random.Random(10)
sys, K, L, eps, n, u = transitivity_instance(rng)
w = project_transitivity_witness(sys.space, sys, K, L, eps, n, u)
print(f"system {type(sys).__name__}, eps {eps}, n {n}")
print(f"  endograph gap delta = {w.delta}, level used alpha = {w.alpha_used}")
print("  compact witness distances:", {k: str(v) for k, v in w.validation.items()})

sys, u, v, eps, n, witnesses = lift_instance(rng)
w = lift_transitivity_witness(sys.space, sys, u, v, eps, n, witnesses)
print(f"lifted {len(witnesses)} level witnesses on {type(sys).__name__}, eps {eps}")
print("  fuzzy witness distances:", {k: str(v) for k, v in w.validation.items()})
