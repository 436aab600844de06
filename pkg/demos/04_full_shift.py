"""Family transitivity of the full 2-shift on cylinders of length <= 4.

Return sets are exact here: a time n is in N([w], [v]) precisely when the
constraints "w at 0" and "v at n" are consistent.
"""

from fuzzydyn.analysis import check_A_transitive, check_devaney, transitivity_return_sets
from fuzzydyn.dynamics import FullShift, basis
from fuzzydyn.families import parse_family

sys = FullShift(2)
cylinders = basis(sys, 4)
H = 64
sets = transitivity_return_sets(sys, "base", cylinders, H)
for text in ("cofinite:4", "thick:8", "syndetic:1", "syndetic:4", "ap:8", "ubd:1/2"):
    rep = check_A_transitive(sys, "base", cylinders, parse_family(text), H, return_sets=sets)
    bad = rep.failing()
    tail = f"; {len(bad)} pairs fail, e.g. {bad[0].u}->{bad[0].v} {bad[0].certificate}" if bad else ""
    print(f"{text:12s} {'holds' if rep.holds else 'fails'}{tail}")
print("Devaney at scale:", check_devaney(sys, "base", cylinders, H).extra)
