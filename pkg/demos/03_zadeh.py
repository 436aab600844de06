"""The Zadeh image of a fuzzy set, computed levelwise and pointwise.

On a finite map both routes agree, and iterating the image n times equals the
image under the n-th power of the map.
"""

import random

from fuzzydyn.dynamics import power_map, zadeh_image, zadeh_iterate, zadeh_pointwise
from fuzzydyn.fuzzy import gen_random
from fuzzydyn.generators import random_finite_map, random_finite_space
from fuzzydyn.metrics import membership_map

rng = random.Random(7)
space = random_finite_space(rng, n=6)
f = random_finite_map(rng, space)
u = gen_random(space, 3, 4, rng)


def show(w):
    return {space.label(x): str(a) for x, a in sorted(membership_map(w).items(), key=lambda kv: kv[0].index)}


print("map:", {space.labels[i]: space.labels[j] for i, j in enumerate(f.table)})
print("u          :", show(u))
print("f(u)       :", show(zadeh_image(f, u)))
print("pointwise  :", show(zadeh_pointwise(f, u)))
print("f^3(u)     :", show(zadeh_iterate(f, u, 3)))
print("(f^3)(u)   :", show(zadeh_image(power_map(f, 3), u)))
