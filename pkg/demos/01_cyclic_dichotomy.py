"""Which cyclic groups carry a J-structure?

Searches Z/n for n = 1..16, then looks at why the even ones fail: a
witness must have odd order, and a cyclic group of even order has an
element of order 2 commuting with everything.
"""

from __future__ import annotations

from jgroups import check_witness_necessary, make_cyclic, search_coset

print(f"{'n':>3} {'structures':>11}  exhaustive")
for n in range(1, 17):
    out = search_coset(make_cyclic(n))
    print(f"{n:>3} {len(out.structures):>11}  {out.exhaustive}")

G = make_cyclic(6)
print("\nwhy Z/6 fails:")
for w in range(6):
    print(f"  witness {w}: {check_witness_necessary(G, w).reason}")

# the binomial map x(x-1)/2 is one of the structures on Z/9
out = search_coset(make_cyclic(9))
binom = tuple(x * (x - 1) * 5 % 9 for x in range(9))
print("\nbinomial map on Z/9 among the search results:", any(s.fmap == binom and s.witness == 1 for s in out.structures))
