"""Coarsening a fuzzy set to few levels with a guaranteed d_inf error."""

import random
from fractions import Fraction

from fuzzydyn import d_inf, gen_random, quantize
from fuzzydyn.generators import random_finite_space

rng = random.Random(6)
space = random_finite_space(rng)
u = gen_random(space, 6, 8, rng, level_grid=32)
print(f"u has {len(u.levels)} levels: {[str(a) for a in u.levels]}")
for eps in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
    res = quantize(space, u, eps)
    print(f"eps={eps}: keeps {[str(a) for a in res.breakpoints]}, "
          f"achieved {res.achieved_bound}, d_inf {d_inf(space, u, res.quantized)}")
