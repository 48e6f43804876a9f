"""J-structures from a projection onto the integers.

Three settings: a free module over Q, the group Z x H for a finite group
H, and the subgroup Z + Z*sqrt2 of the real line, where the projection is
a floor and all comparisons are exact.
"""

from __future__ import annotations

import random
from fractions import Fraction

from jgroups import make_symmetric
from jgroups.constructions import (
    ModuleDescriptor,
    RealSubgroupDescriptor,
    module_jgroup,
    real_projection,
    real_subgroup_jgroup,
    z_times_h,
)
from jgroups.exactnum import QuadRat
from jgroups.jrings import RingDescriptor

m = ModuleDescriptor.coordinate(RingDescriptor.rational(), 2, 0)
f = module_jgroup(m)
x = (Fraction(2), Fraction(3))
print("Q^2: f(2, 3) =", tuple(str(c) for c in f(x)), " axiom:", f.check(x))

s, report = z_times_h(make_symmetric(3), 25)
print(f"Z x S3: {report.checks} window checks, valid={report.valid}")

d = RealSubgroupDescriptor()
g = real_subgroup_jgroup(d)
for x in (QuadRat(0, 1), QuadRat(1, 1), QuadRat(0)):
    print(f"Z+Z*sqrt2: x = {x}: P = {real_projection(d, x)}, f = {g(x)}")
print("500 random elements valid:", g.verify_samples(500, random.Random(1)).valid)
