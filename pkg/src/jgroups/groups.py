"""Finite groups stored as Cayley tables on the indices 0..n-1.

Element 0 is always the identity. Tables are numpy int32 arrays and are
frozen after construction, so a group can be shared freely between
threads and worker processes.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ORDER = 10**6
FULL_CHECK_LIMIT = 256
# Above this a dense Cayley table no longer fits comfortably in memory.
MAX_TABLE_ORDER = 5000


class GroupError(ValueError):
    """Raised when a table does not describe a group, or parameters are out of range."""


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[i][j]`` is the index of ``i*j``. The identity must be element 0;
    use :meth:`from_table` to relabel an arbitrary table.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        name: str = "group",
        *,
        check_associativity: bool | None = None,
    ) -> None:
        table = np.array(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError(f"Cayley table must be a non-empty square array, got shape {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError("Cayley table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
            raise GroupError("element 0 is not a two-sided identity")
        for axis in (0, 1):
            if not np.all(np.sort(table, axis=axis) == (ar[:, None] if axis == 0 else ar[None, :])):
                raise GroupError("Cayley table is not a Latin square")
        inverses = np.argmax(table == 0, axis=1).astype(np.int32)
        if not np.all(table[inverses, ar] == 0):
            raise GroupError("left and right inverses differ")
        if check_associativity is None:
            check_associativity = n <= FULL_CHECK_LIMIT
        if check_associativity:
            _check_associative(table)
        table.setflags(write=False)
        inverses.setflags(write=False)
        self.table = table
        self.inverses = inverses
        self.name = name

    @classmethod
    def from_table(cls, table, name: str = "group", **kwargs) -> FiniteGroup:
        """Build a group from any Cayley table, moving the identity to index 0."""
        table = np.array(table, dtype=np.int64)
        n = table.shape[0]
        ar = np.arange(n)
        ident = [e for e in range(n) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
        if not ident:
            raise GroupError("table has no identity element")
        e = ident[0]
        if e != 0:
            perm = ar.copy()
            perm[0], perm[e] = e, 0  # perm is its own inverse
            table = perm[table[np.ix_(perm, perm)]]
        return cls(table, name, **kwargs)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    identity = 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    @cached_property
    def rows(self) -> list[list[int]]:
        # plain lists are much faster than numpy scalars in Python loops
        return self.table.tolist()

    @cached_property
    def inv_list(self) -> list[int]:
        return self.inverses.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inv_list[a]

    def power(self, x: int, k: int) -> int:
        """``x**k`` for any integer k, by square-and-multiply."""
        if k < 0:
            x, k = self.inv_list[x], -k
        rows = self.rows
        result = 0
        while k:
            if k & 1:
                result = rows[result][x]
            x = rows[x][x]
            k >>= 1
        return result

    def product(self, elements: Iterable[int]) -> int:
        rows = self.rows
        acc = 0
        for e in elements:
            acc = rows[acc][e]
        return acc

    def commutes(self, a: int, b: int) -> bool:
        return self.rows[a][b] == self.rows[b][a]

    @cached_property
    def element_orders(self) -> np.ndarray:
        rows = self.rows
        orders = np.zeros(self.order, dtype=np.int64)
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = rows[y][x]
                k += 1
            orders[x] = k
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> ElementSet:
        mask = np.all(self.table == self.table.T, axis=1)
        return ElementSet(self, mask)

    def is_central(self, x: int) -> bool:
        return bool(np.array_equal(self.table[x], self.table[:, x]))

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))


@dataclass(frozen=True, eq=False)
class ElementSet:
    """A subset of a group's elements, stored as a boolean mask."""

    group: FiniteGroup
    mask: np.ndarray

    def __post_init__(self) -> None:
        if self.mask.shape != (self.group.order,):
            raise ValueError("mask length must equal the group order")

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __iter__(self) -> Iterator[int]:
        return iter(np.flatnonzero(self.mask).tolist())

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.mask, other.mask)

    def elements(self) -> list[int]:
        return list(self)


def _check_associative(table: np.ndarray) -> None:
    n = table.shape[0]
    chunk = max(1, 2**22 // (n * n))
    for start in range(0, n, chunk):
        rows = table[start:start + chunk]
        left = table[rows]  # left[c, j, k] = (i*j)*k
        right = rows[:, table]  # right[c, j, k] = i*(j*k)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            i, j, k = int(bad[0]) + start, int(bad[1]), int(bad[2])
            raise GroupError(f"associativity fails at ({i}, {j}, {k})")


def element_order(G: FiniteGroup, x: int) -> int:
    return int(G.element_orders[x])


def centralizer(G: FiniteGroup, x: int) -> ElementSet:
    """All y with x*y == y*x."""
    return ElementSet(G, G.table[x] == G.table[:, x])


def generated_subgroup(G: FiniteGroup, generators: Iterable[int]) -> ElementSet:
    gens = list(dict.fromkeys(generators))
    rows = G.rows
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = rows[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    mask = np.zeros(G.order, dtype=bool)
    mask[list(seen)] = True
    return ElementSet(G, mask)


def commutator(G: FiniteGroup, a: int, b: int) -> int:
    return G.product((G.inv(a), G.inv(b), a, b))


def nilpotency_class(G: FiniteGroup) -> int | None:
    """Length of the lower central series, or None if G is not nilpotent."""
    term = list(range(G.order))
    cls = 0
    while len(term) > 1:
        comms = {commutator(G, x, y) for x in term for y in range(G.order)}
        nxt = generated_subgroup(G, comms).elements()
        if len(nxt) == len(term):
            return None
        term = nxt
        cls += 1
    return cls


# -- constructors -----------------------------------------------------------

def make_cyclic(n: int) -> FiniteGroup:
    """Z/nZ written additively."""
    if n < 1:
        raise GroupError("cyclic group order must be at least 1")
    if n > MAX_TABLE_ORDER:
        raise GroupError(f"order {n} exceeds the table limit {MAX_TABLE_ORDER}")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, f"cyclic:{n}", check_associativity=False)


def _product_parts(G: FiniteGroup) -> list[str]:
    if G.name.startswith("product:"):
        return _split_product(G.name[len("product:"):])
    return [G.name]


def make_direct_product(G: FiniteGroup, H: FiniteGroup, max_order: int = MAX_ORDER) -> FiniteGroup:
    """G x H with the pair (i, j) stored at index ``i*|H| + j``."""
    n = G.order * H.order
    if n > max_order:
        raise GroupError(f"product order {n} exceeds the maximum {max_order}")
    if n > MAX_TABLE_ORDER:
        raise GroupError(f"order {n} exceeds the table limit {MAX_TABLE_ORDER}")
    m = H.order
    table = G.table.astype(np.int64)[:, None, :, None] * m + H.table[None, :, None, :]
    name = "product:" + "x".join(_product_parts(G) + _product_parts(H))
    return FiniteGroup(table.reshape(n, n), name, check_associativity=False)


def make_symmetric(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order; a*b means apply b, then a."""
    if not 1 <= n <= 5:
        raise GroupError("symmetric group degree must be in 1..5")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[k]] for k in range(n))] for b in perms] for a in perms]
    return FiniteGroup(table, f"sym:{n}")


def make_dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, r^k s^e stored at index k + n*e."""
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    if 2 * n > MAX_TABLE_ORDER:
        raise GroupError(f"order {2 * n} exceeds the table limit {MAX_TABLE_ORDER}")
    table = []
    for e1 in (0, 1):
        for k1 in range(n):
            row = []
            for e2 in (0, 1):
                for k2 in range(n):
                    # s r^k = r^-k s
                    k = (k1 + (-k2 if e1 else k2)) % n
                    row.append(k + n * (e1 ^ e2))
            table.append(row)
    return FiniteGroup(table, f"dihedral:{n}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def make_unitriangular_mod(n: int, p: int) -> FiniteGroup:
    """Upper unitriangular n x n matrices over Z/p.

    The strictly upper entries, read row by row, are the base-p digits of
    the element index (first entry least significant).
    """
    if not 2 <= n <= 4:
        raise GroupError("unitriangular dimension must be in 2..4")
    if not _is_prime(p):
        raise GroupError(f"{p} is not prime")
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    order = p ** len(slots)
    if order > MAX_TABLE_ORDER:
        raise GroupError(f"order {order} exceeds the table limit {MAX_TABLE_ORDER}")
    mats = np.zeros((order, n, n), dtype=np.int64)
    mats[:, range(n), range(n)] = 1
    digits = np.arange(order)
    for (i, j) in slots:
        mats[:, i, j] = digits % p
        digits = digits // p
    weights = np.array([p**k for k in range(len(slots))], dtype=np.int64)
    rows_idx = [s[0] for s in slots]
    cols_idx = [s[1] for s in slots]
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        prod = (mats[a] @ mats) % p  # (order, n, n)
        table[a] = prod[:, rows_idx, cols_idx] @ weights
    return FiniteGroup(table, f"unitri:{n}:{p}")


def make_metacyclic(m: int, k: int, r: int) -> FiniteGroup:
    """Z/m x| Z/k with b a b^-1 = a^r; the pair (a, b) sits at index a + m*b.

    ``make_metacyclic(7, 3, 2)`` is the nonabelian group of order 21.
    """
    if m < 1 or k < 1:
        raise GroupError("metacyclic parameters must be positive")
    if pow(r, k, m) != 1 % m:
        raise GroupError(f"r={r} does not satisfy r^{k} = 1 mod {m}")
    if m * k > MAX_TABLE_ORDER:
        raise GroupError(f"order {m * k} exceeds the table limit {MAX_TABLE_ORDER}")
    table = []
    for b1 in range(k):
        for a1 in range(m):
            row = []
            for b2 in range(k):
                for a2 in range(m):
                    row.append((a1 + pow(r, b1, m) * a2) % m + m * ((b1 + b2) % k))
            table.append(row)
    return FiniteGroup(table, f"meta:{m}:{k}:{r}")


# -- spec strings and JSON --------------------------------------------------

_KEYWORDS = ("cyclic", "dihedral", "sym", "unitri", "meta", "file", "product")
_SPLIT = re.compile(r"x(?=(?:%s):)" % "|".join(_KEYWORDS))
_ALIAS = re.compile(r"^(Z/?|C|S|D)(\d+)$")


def _split_product(body: str) -> list[str]:
    return _SPLIT.split(body)


def parse_group_spec(spec: str) -> FiniteGroup:
    """Build a group from a spec string.

    Grammar: ``cyclic:N``, ``dihedral:N``, ``sym:N``, ``unitri:N:P``,
    ``meta:M:K:R``, ``product:<spec>x<spec>[x...]``, ``file:<path>``, and
    the short aliases ``Z5``, ``Z/5``, ``S3``, ``D4``.
    """
    spec = spec.strip()
    alias = _ALIAS.match(spec)
    if alias:
        kind, n = alias.group(1), int(alias.group(2))
        return {"S": make_symmetric, "D": make_dihedral}.get(kind, make_cyclic)(n)
    kind, _, rest = spec.partition(":")
    try:
        if kind == "product":
            parts = _split_product(rest)
            if len(parts) < 2:
                raise GroupError(f"product needs at least two factors: {spec!r}")
            G = parse_group_spec(parts[0])
            for part in parts[1:]:
                G = make_direct_product(G, parse_group_spec(part))
            return G
        if kind == "file":
            return load_group(rest)
        args = [int(a) for a in rest.split(":")] if rest else []
    except ValueError as exc:
        if isinstance(exc, GroupError):
            raise
        raise GroupError(f"malformed group spec {spec!r}") from exc
    builders = {
        "cyclic": (make_cyclic, 1),
        "dihedral": (make_dihedral, 1),
        "sym": (make_symmetric, 1),
        "unitri": (make_unitriangular_mod, 2),
        "meta": (make_metacyclic, 3),
    }
    if kind not in builders:
        raise GroupError(f"unknown group kind {kind!r} in {spec!r}")
    fn, arity = builders[kind]
    if len(args) != arity:
        raise GroupError(f"{kind} takes {arity} integer argument(s), got {spec!r}")
    return fn(*args)


def group_to_dict(G: FiniteGroup) -> dict:
    return {"name": G.name, "order": G.order, "table": G.table.tolist()}


def group_from_dict(data: dict) -> FiniteGroup:
    try:
        table = data["table"]
        name = data.get("name", "group")
        order = data["order"]
    except (KeyError, TypeError) as exc:
        raise GroupError(f"group object needs 'order' and 'table': {exc}") from exc
    if not isinstance(order, int) or len(table) != order or any(len(row) != order for row in table):
        raise GroupError("declared order does not match the table")
    return FiniteGroup.from_table(table, name, check_associativity=True)


def load_group(path: str | Path) -> FiniteGroup:
    with open(path) as fh:
        return group_from_dict(json.load(fh))


def save_group(G: FiniteGroup, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(group_to_dict(G), fh)
