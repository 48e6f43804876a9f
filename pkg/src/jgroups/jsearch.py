"""Exhaustive search for J-structures on a finite group.

The axiom ties f(x*w) to f(x), so fixing f at one element fixes it along
the whole orbit x, x*w, x*w^2, ... . Going once around the orbit must
return to the starting value, which either holds or not. Orbits never
interact, so the consistent seeds of each orbit are found on their own and
every structure is one choice of consistent seed per orbit.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .groups import FiniteGroup
from .jstruct import (
    JStructure,
    _check_variant,
    check_witness_necessary,
    factor_on_left,
    verify_axiom,
    witness_on_left,
)

MAX_SEARCH_ORDER = 64
SEED_BOUND = 10**8
BRUTEFORCE_MAX_ORDER = 8


@dataclass(frozen=True)
class SearchOptions:
    variant: str = "J2"
    witness_filter: str = "centralizer-pruned"  # or "all"
    max_results: int | None = None
    enumeration_order: str = "canonical"  # or "reversed"
    time_budget: float = 600.0
    # absolute time.time() deadline; overrides time_budget when set
    deadline: float | None = None
    # the identity is searched only for the trivial group unless this is off
    prune_identity: bool = True
    max_order: int = MAX_SEARCH_ORDER
    seed_bound: int = SEED_BOUND
    workers: int = 1

    def __post_init__(self) -> None:
        _check_variant(self.variant)
        if self.witness_filter not in ("all", "centralizer-pruned"):
            raise ValueError(f"unknown witness filter {self.witness_filter!r}")
        if self.enumeration_order not in ("canonical", "reversed"):
            raise ValueError(f"unknown enumeration order {self.enumeration_order!r}")
        if not self.time_budget > 0:
            raise ValueError("time budget must be positive")
        if self.max_results is not None and self.max_results < 0:
            raise ValueError("max_results must be non-negative")


@dataclass
class SearchOutcome:
    structures: list[JStructure]
    exhaustive: bool
    witnesses_pruned: int
    seeds_tested: int
    witnesses_searched: int = 0
    # number of structures in the searched space; may exceed len(structures)
    structure_count: int = 0
    truncation: str | None = None
    prune_reasons: dict[int, str] = field(default_factory=dict)

    @property
    def certified_none(self) -> bool:
        return self.exhaustive and not self.structures

    def keys(self) -> set[tuple[int, tuple[int, ...]]]:
        return {s.key() for s in self.structures}

    def to_dict(self) -> dict:
        return {
            "structures": [{"witness": s.witness, "fmap": list(s.fmap)} for s in self.structures],
            "exhaustive": self.exhaustive,
            "witnesses_pruned": self.witnesses_pruned,
            "seeds_tested": self.seeds_tested,
            "witnesses_searched": self.witnesses_searched,
            "structure_count": self.structure_count,
            "truncation": self.truncation,
            "prune_reasons": {str(k): v for k, v in sorted(self.prune_reasons.items())},
        }


def witness_orbits(G: FiniteGroup, w: int, variant: str = "J2") -> list[list[int]]:
    """Orbits of x -> x*w (or w*x for J3/J4), each listed from its smallest element."""
    rows = G.rows
    left = witness_on_left(variant)
    seen = [False] * G.order
    orbits = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = []
        y = x
        while not seen[y]:
            seen[y] = True
            orbit.append(y)
            y = rows[w][y] if left else rows[y][w]
        orbits.append(orbit)
    return orbits


def _run_orbit(rows: list[list[int]], orbit: list[int], seed: int, left: bool) -> list[int] | None:
    vals = [seed]
    v = seed
    for y in orbit:
        v = rows[y][v] if left else rows[v][y]
        vals.append(v)
    # the last step wraps around to the start of the orbit
    return vals[:-1] if vals[-1] == seed else None


def _rotate(orbit: list[int], start: int) -> list[int]:
    i = orbit.index(start)
    return orbit[i:] + orbit[:i]


def extend_from_seed(
    G: FiniteGroup, w: int, seeds: Mapping[int, int], variant: str = "J2"
) -> tuple[int, ...] | None:
    """Extend one seed value per orbit to a full map, or None if some orbit does not close.

    Keys of ``seeds`` may be any element of their orbit; exactly one per orbit.
    """
    _check_variant(variant)
    orbits = witness_orbits(G, w, variant)
    owner = {}
    for k, orbit in enumerate(orbits):
        for x in orbit:
            owner[x] = k
    chosen: dict[int, int] = {}
    for x in seeds:
        if x not in owner:
            raise ValueError(f"seed key {x} is not an element of the group")
        k = owner[x]
        if k in chosen:
            raise ValueError(f"two seeds given for the orbit of {orbits[k][0]}")
        chosen[k] = x
    missing = [orbits[k][0] for k in range(len(orbits)) if k not in chosen]
    if missing:
        raise ValueError(f"no seed for the orbit(s) of {missing}")
    fmap = [0] * G.order
    left = factor_on_left(variant)
    for k, orbit in enumerate(orbits):
        start = chosen[k]
        seed = seeds[start]
        if not 0 <= seed < G.order:
            raise ValueError(f"seed value {seed} is not an element of the group")
        path = _rotate(orbit, start)
        vals = _run_orbit(G.rows, path, seed, left)
        if vals is None:
            return None
        for x, v in zip(path, vals):
            fmap[x] = v
    return tuple(fmap)


@dataclass
class _WitnessResult:
    witness: int
    structures: list[JStructure]
    seeds_tested: int
    count: int
    truncation: str | None = None


def _search_witness(G: FiniteGroup, w: int, opts: SearchOptions, deadline: float, limit: int | None) -> _WitnessResult:
    rows = G.rows
    left = factor_on_left(opts.variant)
    rev = opts.enumeration_order == "reversed"
    orbits = witness_orbits(G, w, opts.variant)
    if rev:
        orbits = orbits[::-1]
    seed_values = range(G.order - 1, -1, -1) if rev else range(G.order)
    per_orbit: list[list[list[int]]] = []
    tested = 0
    for orbit in orbits:
        good = []
        for seed in seed_values:
            tested += 1
            vals = _run_orbit(rows, orbit, seed, left)
            if vals is not None:
                good.append(vals)
        if time.time() > deadline:
            return _WitnessResult(w, [], tested, 0, "time budget exhausted")
        per_orbit.append(good)
        if not good:
            return _WitnessResult(w, [], tested, 0)
    count = math.prod(len(g) for g in per_orbit)
    structures = []
    truncation = None
    fmap = [0] * G.order
    for k, combo in enumerate(itertools.product(*per_orbit)):
        if limit is not None and len(structures) >= limit:
            truncation = "max_results reached"
            break
        if k >= opts.seed_bound:
            truncation = f"more than {opts.seed_bound} structures for witness {w}"
            break
        if k % 1024 == 0 and time.time() > deadline:
            truncation = "time budget exhausted"
            break
        for orbit, vals in zip(orbits, combo):
            for x, v in zip(orbit, vals):
                fmap[x] = v
        s = JStructure(G, w, tuple(fmap), opts.variant)
        report = verify_axiom(s)
        if not report.valid:
            raise AssertionError(f"propagated map fails the axiom at {report.violations[0]}")
        structures.append(JStructure(G, w, s.fmap, opts.variant, verified=True))
    return _WitnessResult(w, structures, tested, count, truncation)


def _search_witness_job(args):
    return _search_witness(*args)


def search_coset(G: FiniteGroup, opts: SearchOptions | None = None) -> SearchOutcome:
    """Find every J-structure on G for the chosen variant, witness by witness.

    Budget exhaustion or a result cap gives a non-exhaustive outcome rather
    than an error.
    """
    opts = opts or SearchOptions()
    if G.order > opts.max_order:
        raise ValueError(f"group order {G.order} exceeds the search bound {opts.max_order}")
    deadline = opts.deadline if opts.deadline is not None else time.time() + opts.time_budget
    witnesses = list(range(G.order))
    if opts.enumeration_order == "reversed":
        witnesses.reverse()

    pruned: dict[int, str] = {}
    candidates = []
    out_of_time = False
    for w in witnesses:
        if time.time() > deadline:
            out_of_time = True
            break
        if opts.prune_identity and w == G.identity and G.order > 1:
            pruned[w] = "the identity is a witness only for the trivial group"
            continue
        if opts.witness_filter == "centralizer-pruned":
            check = check_witness_necessary(G, w)
            if not check.admissible:
                pruned[w] = check.reason
                continue
        candidates.append(w)

    if opts.workers > 1 and len(candidates) > 1:
        jobs = [(G, w, opts, deadline, opts.max_results) for w in candidates]
        with ProcessPoolExecutor(max_workers=opts.workers) as pool:
            results = list(pool.map(_search_witness_job, jobs))
    else:
        results = []
        for w in candidates:
            remaining = None
            if opts.max_results is not None:
                remaining = opts.max_results - sum(len(r.structures) for r in results)
            if time.time() > deadline:
                results.append(_WitnessResult(w, [], 0, 0, "time budget exhausted"))
                continue
            results.append(_search_witness(G, w, opts, deadline, remaining))

    structures: list[JStructure] = []
    truncation = "time budget exhausted" if out_of_time else None
    for r in results:  # already in enumeration order
        structures.extend(r.structures)
        truncation = truncation or r.truncation
    if opts.max_results is not None and len(structures) > opts.max_results:
        structures = structures[: opts.max_results]
        truncation = truncation or "max_results reached"
    count = sum(r.count for r in results)
    if opts.max_results is not None and truncation is None and count > len(structures):
        truncation = "max_results reached"
    return SearchOutcome(
        structures=structures,
        exhaustive=truncation is None,
        witnesses_pruned=len(pruned),
        seeds_tested=sum(r.seeds_tested for r in results),
        witnesses_searched=len(candidates),
        structure_count=count,
        truncation=truncation,
        prune_reasons=pruned,
    )


def _all_maps(n: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop-1 of the lexicographic list of all maps {0..n-1} -> {0..n-1}."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers[None, :]) % n).astype(np.int64)


def search_bruteforce(G: FiniteGroup, variant: str = "J2") -> SearchOutcome:
    """Test every (w, f) pair directly against the axiom; an independent oracle for small groups."""
    _check_variant(variant)
    n = G.order
    if n > BRUTEFORCE_MAX_ORDER:
        raise ValueError(f"brute force is limited to order {BRUTEFORCE_MAX_ORDER}, got {n}")
    T = G.table.astype(np.int64)
    ar = np.arange(n)
    total = n**n
    chunk = 1 << 18
    structures = []
    for w in range(n):
        shift = T[w, :] if witness_on_left(variant) else T[:, w]
        for start in range(0, total, chunk):
            F = _all_maps(n, start, min(start + chunk, total))
            lhs = F[:, shift]
            rhs = T[ar[None, :], F] if factor_on_left(variant) else T[F, ar[None, :]]
            for row in F[np.all(lhs == rhs, axis=1)]:
                structures.append(JStructure(G, w, tuple(row.tolist()), variant, verified=True))
    return SearchOutcome(
        structures=structures,
        exhaustive=True,
        witnesses_pruned=0,
        seeds_tested=n * total,
        witnesses_searched=n,
        structure_count=len(structures),
    )


@dataclass
class Certificate:
    certified: bool
    method: str  # "necessary-condition" or "exhaustive-search"
    detail: str
    structures: list[JStructure] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "certified": self.certified,
            "method": self.method,
            "detail": self.detail,
            "structures": [{"witness": s.witness, "fmap": list(s.fmap)} for s in self.structures],
        }


def certify_non_jgroup(G: FiniteGroup, variant: str = "J2", time_budget: float = 600.0) -> Certificate:
    """Prove that G carries no J-structure, or return the structures that refute it."""
    reasons = {}
    for w in range(G.order):
        check = check_witness_necessary(G, w)
        if check.admissible:
            break
        reasons[w] = check.reason
    else:
        summary = "; ".join(f"{w}: {r}" for w, r in reasons.items())
        return Certificate(True, "necessary-condition", f"no admissible witness ({summary})")
    outcome = search_coset(G, SearchOptions(variant=variant, time_budget=time_budget))
    if outcome.structures:
        return Certificate(False, "exhaustive-search", f"{outcome.structure_count} structures exist", outcome.structures)
    if not outcome.exhaustive:
        return Certificate(False, "exhaustive-search", f"search incomplete: {outcome.truncation}")
    return Certificate(
        True,
        "exhaustive-search",
        f"{outcome.witnesses_searched} admissible witnesses searched, {outcome.seeds_tested} seeds, none consistent",
    )
