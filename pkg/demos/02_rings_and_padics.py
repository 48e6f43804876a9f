"""Rings of odd characteristic and the p-adic integers.

The additive group of a ring with 2 invertible is a J-group through
f(x) = x(x-1)/2 with witness 1. For p = 2 the halving costs one digit.
"""

from __future__ import annotations

import random

from jgroups.exactnum import TruncatedPAdicInt, padic_binom2
from jgroups.jrings import (
    EvenCharacteristicError,
    ProfiniteProductDescriptor,
    RingDescriptor,
    profinite_product,
    ring_to_jgroup,
)
from jgroups.jstruct import verify_axiom

s = ring_to_jgroup(RingDescriptor.mod(9))
print("Z/9:", s.fmap, "valid:", verify_axiom(s).valid)

try:
    ring_to_jgroup(RingDescriptor.mod(6))
except EvenCharacteristicError as exc:
    print("Z/6 rejected:", exc)

rng = random.Random(0)
for p in (2, 3, 5):
    f = ring_to_jgroup(RingDescriptor.padic(p, 12))
    report = f.verify_samples(1000, rng)
    x = TruncatedPAdicInt.of(12345, p, 12)
    print(f"Z_{p}: 1000 samples valid={report.valid}; binom(12345) = {padic_binom2(x)}")

t = profinite_product(ProfiniteProductDescriptor(torsion=((3, 2, 1), (5, 1, 2))))
print("Z/9 x (Z/5)^2: order", t.group.order, "valid:", verify_axiom(t).valid)
