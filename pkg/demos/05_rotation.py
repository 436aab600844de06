"""The golden rotation: transitive with bounded gaps, yet never thick.

Return times into an arc of width 1/8 form a syndetic set whose gaps are
bounded by a small constant, but the orbit leaves any arc shortly after
entering it, so no pair of arcs shares a run of 8 consecutive return times.
"""

from fuzzydyn.analysis import check_A_transitive, check_periodic_density, transitivity_return_sets
from fuzzydyn.dynamics import CircleRotation, basis
from fuzzydyn.families import Syndetic, Thick

rot = CircleRotation()
arcs = basis(rot, 8)
H = 512
sets = transitivity_return_sets(rot, "base", arcs, H)
synd = check_A_transitive(rot, "base", arcs, Syndetic(13), H, return_sets=sets)
print("Syndetic(13):", synd.holds, "largest hole", max(p.certificate["max_hole"] for p in synd.pairs))
thick = check_A_transitive(rot, "base", arcs, Thick(8), H, return_sets=sets)
print("Thick(8):", thick.holds, f"({len(thick.failing())}/{len(thick.pairs)} pairs fail)")
longest = max(p.certificate["longest_run"][1] - p.certificate["longest_run"][0] for p in thick.pairs)
print("longest run of consecutive return times:", longest + 1)
print("periodic points dense:", check_periodic_density(rot, "base", arcs, H).holds)
