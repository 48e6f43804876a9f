"""The nonabelian group of order 21.

It has odd order, so no witness is excluded by the order condition. The
search below runs both enumeration orders and reports what it finds.
"""

from __future__ import annotations

import time

from jgroups.groups import make_metacyclic
from jgroups.jsearch import SearchOptions, search_coset

G = make_metacyclic(7, 3, 2)
print(f"{G.name}: order {G.order}, abelian={G.is_abelian}, element orders {sorted(set(G.element_orders.tolist()))}")
for order in ("canonical", "reversed"):
    t0 = time.perf_counter()
    out = search_coset(G, SearchOptions(enumeration_order=order, witness_filter="all"))
    dt = time.perf_counter() - t0
    print(f"{order:>9}: {len(out.structures)} structures, exhaustive={out.exhaustive}, "
          f"{out.witnesses_searched} witnesses, {out.seeds_tested} seeds, {dt:.3f}s")
