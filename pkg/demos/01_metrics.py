"""Four distances between fuzzy sets on a two-point space.

u puts full weight on a and half weight on b; v is the same shape but its
lower level sits at 0.6 instead of 0.5.  Levelwise comparison (d_inf) sees a
whole unit of disagreement, while a reparametrisation of the level axis
(skorokhod) only has to move 0.6 down to 0.5.
"""

from fractions import Fraction

from fuzzydyn import CompactSet, FiniteMetric, StepFuzzySet, d_endo, d_inf, d_sendo, d_skorokhod

space = FiniteMetric(("a", "b"), ((0, 1), (1, 0)))
a, b = space.point("a"), space.point("b")
u = StepFuzzySet((Fraction(1, 2), Fraction(1)), (CompactSet([a, b]), CompactSet([a])))
v = StepFuzzySet((Fraction(3, 5), Fraction(1)), (CompactSet([a, b]), CompactSet([a])))

eps, alignment = d_skorokhod(space, u, v)
print(f"d_inf      = {d_inf(space, u, v)}")
print(f"skorokhod  = {eps}   level map { {str(k): str(c) for k, c in alignment.breakpoint_images.items()} }")
print(f"sendograph = {d_sendo(space, u, v)}")
print(f"endograph  = {d_endo(space, u, v)}")
print("chain endo <= sendo <= skorokhod <= inf:", d_endo(space, u, v) <= d_sendo(space, u, v) <= eps <= d_inf(space, u, v))
