#!/usr/bin/env python3
"""The Fourier-Mukai transform on twisted cochains, and its inverse.

Twisted cochains are finite Laurent objects in a degree-2 variable u; the
transform pulls back along one leg, multiplies by e^{u^-1 b} (a terminating
series, since b is a product of square-zero generators), and integrates
along the other leg.  Componentwise it swaps the two halves of
w = alpha + e1*beta, shifting one of them by a power of u, and the composite
u Phi_{-b} Phi_b is the identity on the nose."""

import random
from fractions import Fraction

from sullivan import TwistedCochain, compose_fm, fm_inverse, fm_transform, twisted_d
from sullivan.tduality import btfold_quintuple

q = btfold_quintuple().quintuple
s1 = q.side1

one = TwistedCochain(s1, 0, {0: s1.algebra.one()})
print("Phi(1)       =", fm_transform(q, one))
w = TwistedCochain(s1, 1, {0: s1.algebra.gen("yc1")})
print("Phi(yc1)     =", fm_transform(q, w))
mixed = TwistedCochain(
    s1, 4, {0: s1.parse("xc2^2 + yc1*y3"), 1: s1.parse("xc2")}
)
print("Phi(mixed)   =", fm_transform(q, mixed))
print("back again   =", fm_inverse(q, fm_transform(q, mixed)))
print()

# twisted cocycles go to twisted cocycles
t1, t2 = q.twist1(), q.twist2()
print("d_a1(mixed)          =", twisted_d(t1, mixed))
print("d_a2(Phi(mixed))     =", twisted_d(t2, fm_transform(q, mixed)))
print()

# composing with the reversed transform: the kernel collapses to
# (e_{1,1} - e_{1,2}) * e_tilde and the composite acts as u^{-1}
comp = compose_fm(q, q.reversed())
print("composite kernel =", comp.b)
rng = random.Random(1)
sample = TwistedCochain(s1, 2, {0: s1.parse("3*xc2 - xt2"), 1: s1.algebra.scalar(Fraction(5, 2))})
print("composite(sample) =", fm_transform(comp, sample))
print("u^-1 * sample     =", sample.u_times(-1))
