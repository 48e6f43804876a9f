"""Strictly upper triangular matrices under the BCH product.

x * y = log(exp x exp y) is computed exactly with rational entries. A
central witness and a functional with P(w) = 1 give a J-structure.
"""

from __future__ import annotations

import random

from jgroups.nilpotent import (
    LinearFunctional,
    bch_product,
    center_basis,
    elementary,
    nilpotent_jstructure,
)

E12, E23 = elementary(3, 1, 2), elementary(3, 2, 3)
print("E12 * E23 =", bch_product(E12, E23).to_json())
for n in (2, 3, 4, 5):
    print(f"center in dimension {n}:", [c.to_json() for c in center_basis(n)])

w = elementary(3, 1, 3)
s = nilpotent_jstructure(3, w, LinearFunctional.coordinate(3, 1, 3))
x = E12 + 2 * w
print("f(E12 + 2 E13) =", s(x).to_json(), " axiom:", s.check(x))
for n in (3, 4, 5):
    t = nilpotent_jstructure(n, elementary(n, 1, n), LinearFunctional.coordinate(n, 1, n))
    print(f"dimension {n}: 200 random elements valid =", t.verify_samples(200, random.Random(n)).valid)
