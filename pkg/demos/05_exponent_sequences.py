"""Exponent sequences on Z_3 and on a finite group.

3^k * x tends to 0 in Z_3 for every x, and binom(3^k, 2) has 3-valuation
exactly k, so the witness powers in the shift identity vanish too.
"""

from __future__ import annotations

import random

from jgroups.expseq import ExponentSequence, SequenceRejected, pointwise_propagation_demo
from jgroups.jrings import RingDescriptor, ring_to_jgroup

s = ring_to_jgroup(RingDescriptor.padic(3, 12))
report = pointwise_propagation_demo(s, ExponentSequence.geometric(3, 10), 100, random.Random(0))
print("Z_3, s = 3^k:", "all passed" if report.all_passed else report.failures)
print("valuations of binom(3^k, 2):", report.binom_track)

try:
    pointwise_propagation_demo(s, ExponentSequence.geometric(2, 10), 10)
except SequenceRejected as exc:
    print("s = 2^k rejected:", exc)

z7 = ring_to_jgroup(RingDescriptor.mod(7))
r = pointwise_propagation_demo(z7, ExponentSequence.constant(7), 0)
print("Z/7 with the constant sequence 7:", r.all_passed, "on", r.domain)
