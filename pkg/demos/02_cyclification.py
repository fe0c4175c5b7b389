#!/usr/bin/env python3
"""Loop algebras and cyclification.

Looping a presentation adjoins a degree-shifted copy s g of every generator
with d(s g) = -s(d g); cyclification additionally adjoins a closed degree-2
class w2 and deforms the differential by w2 * s(.).  The construction is
verified by d^2 = 0 every time it runs."""

from sullivan import cyclify, loopify, sphere_model
from sullivan.cli import dump_presentation
from sullivan.tduality import line_model

print("== free loops of S^4 ==")
loop = loopify(sphere_model(4))
print(dump_presentation(loop.presentation))

print("== cyclification of S^4 ==")
cyc = cyclify(sphere_model(4))
print(dump_presentation(cyc.presentation))
print("canonical 2-cocycle:", cyc.cocycle_name)
print()

# the coefficient -2 in d(sx7) = -2*x4*sx4 is forced by the odd-derivation
# convention for the shift operator; the opposite convention would flip it
cp = cyc.presentation
print("d sx7 =", cp.d_of_generator("sx7"))
print()

print("== cyclification of the degree-3 line ==")
cyc3 = cyclify(line_model(2))
print(dump_presentation(cyc3.presentation))
print("this presentation is isomorphic to the universal T-fold presentation;")
print("see demos/03_tduality_quintuple.py")
