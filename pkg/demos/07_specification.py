"""Shadowing separated orbit segments by one periodic point of the full shift."""

from fractions import Fraction

from fuzzydyn.analysis import SpecInstance, build_spec_witness, verify_specification
from fuzzydyn.dynamics import FullShift
from fuzzydyn.space import ShiftPoint

sys = FullShift(2)
targets = (ShiftPoint.parse("(0)"), ShiftPoint.parse("(1)"), ShiftPoint.parse("(01)"))
inst = SpecInstance(targets, ((0, 2), (10, 12), (20, 23)), Fraction(1, 4), 8)
x = build_spec_witness(sys, inst)
print("witness block:", "".join(map(str, x.cycle)), f"(period {len(x.cycle)}, divides {inst.period})")
print("verified:", verify_specification(sys, x, inst))
print("all-zeros point instead:", verify_specification(sys, ShiftPoint.parse("(0)"), inst))
