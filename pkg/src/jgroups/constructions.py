"""J-structures built from a projection onto a J-ring.

If ``P(x + w) = P(x) + 1`` then

    f(x) = P(x) * (x - P(x) * w) + binom(P(x)) * w

satisfies ``f(x + w) = f(x) + x``. The multiplicative form used for
central witnesses is ``f(x) = (x * w^-P(x))^P(x) * w^binom(P(x), 2)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactnum import QuadRat, binom2, quad_floor
from .groups import FiniteGroup, make_cyclic, make_direct_product
from .jrings import (
    FunctionalJStructure,
    RingDescriptor,
    SampleReport,
    _reject_even,
    binomial_map,
)
from .jstruct import JStructure, verified

# -- modules R^n ------------------------------------------------------------


@dataclass(frozen=True)
class ModuleDescriptor:
    """The free module R^rank with a linear projection P and witness w, P(w) = 1."""

    ring: RingDescriptor
    rank: int
    projection: tuple
    witness: tuple

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be positive")
        proj = self.projection
        if isinstance(proj, int):
            proj = tuple(self.ring.one() if i == proj else self.ring.zero() for i in range(self.rank))
        proj = tuple(self._coerce(c) for c in proj)
        wit = tuple(self._coerce(c) for c in self.witness)
        if len(proj) != self.rank or len(wit) != self.rank:
            raise ValueError("projection and witness must have one entry per coordinate")
        object.__setattr__(self, "projection", proj)
        object.__setattr__(self, "witness", wit)
        if not self.ring.equal(self.project(wit), self.ring.one()):
            raise ValueError("the projection must send the witness to 1")

    @classmethod
    def coordinate(cls, ring: RingDescriptor, rank: int, index: int = 0) -> ModuleDescriptor:
        """Project onto one coordinate, with the matching unit vector as witness."""
        w = tuple(ring.one() if i == index else ring.zero() for i in range(rank))
        return cls(ring, rank, index, w)

    def _coerce(self, c):
        if self.ring.kind in ("rational", "padic-field"):
            return Fraction(c)
        if self.ring.kind == "mod":
            return int(c) % self.ring.modulus
        if self.ring.kind == "integers":
            if Fraction(c).denominator != 1:
                raise ValueError(f"{c} is not an integer")
            return int(c)
        return c

    def project(self, x: Sequence) -> object:
        R = self.ring
        acc = R.zero()
        for c, xi in zip(self.projection, x):
            acc = R.add(acc, R.mul(c, xi))
        return acc

    def add(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(self.ring.add(a, b) for a, b in zip(x, y))

    def scale(self, r, x: Sequence) -> tuple:
        return tuple(self.ring.mul(r, a) for a in x)

    def random_element(self, rng: random.Random) -> tuple:
        return tuple(self.ring.random_element(rng) for _ in range(self.rank))


def module_projection_structure(m: ModuleDescriptor, x: Sequence) -> tuple:
    """f_M(x) = P(x)(x - P(x) w) + f_R(P(x)) w."""
    R = m.ring
    px = m.project(x)
    shifted = m.add(x, m.scale(R.neg(px), m.witness))
    return m.add(m.scale(px, shifted), m.scale(binomial_map(R, px), m.witness))


def module_jgroup(m: ModuleDescriptor) -> FunctionalJStructure:
    return FunctionalJStructure(
        name=f"({m.ring})^{m.rank}",
        witness=m.witness,
        f=lambda x: module_projection_structure(m, x),
        op=m.add,
        sample=m.random_element,
    )


def ring_times_module_structure(R: RingDescriptor, rank: int) -> JStructure | FunctionalJStructure:
    """R x R^rank with witness (1, 0) and f(r, v) = (f_R(r), r v).

    For Z/m the group is tabulated with r as the most significant digit and
    checked at every element.
    """
    _reject_even(R)
    if rank < 1:
        raise ValueError("rank must be positive")
    if R.kind == "mod":
        mod = R.modulus
        G = make_cyclic(mod)
        for _ in range(rank):
            G = make_direct_product(G, make_cyclic(mod))
        fmap = []
        for idx in range(G.order):
            digits = _digits(idx, mod, rank + 1)
            r, v = digits[0], digits[1:]
            image = [binomial_map(R, r)] + [r * vi % mod for vi in v]
            fmap.append(_undigits(image, mod))
        return verified(JStructure(G, _undigits([1 % mod] + [0] * rank, mod), fmap))

    def f(x):
        r, v = x[0], x[1:]
        return (binomial_map(R, r),) + tuple(R.mul(r, vi) for vi in v)

    return FunctionalJStructure(
        name=f"{R} x ({R})^{rank}",
        witness=(R.one(),) + (R.zero(),) * rank,
        f=f,
        op=lambda a, b: tuple(R.add(x, y) for x, y in zip(a, b)),
        sample=lambda rng: tuple(R.random_element(rng) for _ in range(rank + 1)),
    )


def _digits(idx: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(idx % base)
        idx //= base
    return out[::-1]


def _undigits(digits: Iterable[int], base: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * base + d
    return idx


# -- groups as operations ---------------------------------------------------


class GroupOps:
    """Minimal interface for (possibly infinite) groups."""

    identity: object

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result


class IntegerGroup(GroupOps):
    """(Z, +)."""

    identity = 0

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def power(self, x, k):
        return k * x


class ZCrossH(GroupOps):
    """Z x H for a finite group H; elements are pairs (k, u)."""

    def __init__(self, H: FiniteGroup) -> None:
        self.H = H
        self.identity = (0, H.identity)

    def mul(self, a, b):
        return (a[0] + b[0], self.H.mul(a[1], b[1]))

    def inv(self, a):
        return (-a[0], self.H.inv(a[1]))

    def power(self, x, k):
        return (k * x[0], self.H.power(x[1], k))


def central_projection_structure(
    G: GroupOps,
    w,
    P: Callable[[object], int],
    x,
    *,
    check_on: Iterable | None = None,
):
    """f(x) = (x * w^-P(x))^P(x) * w^binom(P(x), 2).

    Centrality of w and the shift rule ``P(y*w) = P(y) + 1`` are checked on
    ``check_on`` (default: x alone) before evaluating.
    """
    for y in [x] if check_on is None else check_on:
        if G.mul(w, y) != G.mul(y, w):
            raise ValueError(f"witness is not central: it does not commute with {y!r}")
        if P(G.mul(y, w)) != P(y) + 1:
            raise ValueError(f"P(y*w) != P(y) + 1 at y = {y!r}")
    k = P(x)
    base = G.mul(x, G.power(w, -k))
    return G.mul(G.power(base, k), G.power(w, binom2(k)))


@dataclass(frozen=True)
class ZCrossHStructure:
    """The structure f(k, u) = (binom(k, 2), u^k) on Z x H with witness (1, 1_H)."""

    h_group: FiniteGroup

    @property
    def ops(self) -> ZCrossH:
        return ZCrossH(self.h_group)

    @property
    def witness(self) -> tuple[int, int]:
        return (1, self.h_group.identity)

    def __call__(self, x: tuple[int, int]) -> tuple[int, int]:
        k, u = x
        return (binom2(k), self.h_group.power(u, k))

    def check(self, x: tuple[int, int]) -> bool:
        G = self.ops
        return self(G.mul(x, self.witness)) == G.mul(self(x), x)

    def verify_window(self, k_window: int) -> SampleReport:
        pts = [(k, u) for k in range(-k_window, k_window + 1) for u in range(self.h_group.order)]
        failures = [x for x in pts if not self.check(x)]
        return SampleReport(len(pts), failures, f"k in [-{k_window}, {k_window}] x {self.h_group.name}")


def z_times_h(H: FiniteGroup, k_window: int) -> tuple[ZCrossHStructure, SampleReport]:
    s = ZCrossHStructure(H)
    return s, s.verify_window(k_window)


# -- subgroups of the real line ---------------------------------------------


def _lattice_basis(vectors: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Echelon basis of the Z-span of integer vectors in Z^2."""
    rows = [list(v) for v in vectors if v != (0, 0)]
    basis = []
    for col in (0, 1):
        pivots = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            head = pivots[0]
            reduced = []
            for r in pivots[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                (reduced if r[col] != 0 else rest).append(r)
            pivots = [head] + reduced
        if pivots:
            basis.append(tuple(pivots[0]))
        rows = [r for r in rest if r != [0, 0]]
    return basis


@dataclass(frozen=True)
class RealSubgroupDescriptor:
    """The subgroup of R generated by some elements of Q(sqrt 2).

    Defaults give G = Z + Z*sqrt2 with witness 1 and offset alpha = sqrt2/2.
    """

    generators: tuple[QuadRat, ...] = (QuadRat(1), QuadRat(0, 1))
    witness: QuadRat = QuadRat(1)
    alpha: QuadRat = QuadRat(0, Fraction(1, 2))

    def __post_init__(self) -> None:
        if not self.witness:
            raise ValueError("the witness must be non-zero")
        if not self.contains(self.witness):
            raise ValueError(f"witness {self.witness} is not in the subgroup")
        if self.contains(self.alpha):
            raise ValueError(f"alpha = {self.alpha} lies in the subgroup; it must not")

    def _scale(self) -> int:
        return math.lcm(*(q.denominator for g in self.generators for q in (g.a, g.b)))

    def contains(self, x: QuadRat) -> bool:
        """Exact membership test via a lattice basis of the generators."""
        d = self._scale()
        vecs = [(int(g.a * d), int(g.b * d)) for g in self.generators]
        target = (x.a * d, x.b * d)
        if target[0].denominator != 1 or target[1].denominator != 1:
            return False
        t = [int(target[0]), int(target[1])]
        for b in _lattice_basis(vecs):
            col = 0 if b[0] != 0 else 1
            if t[col] % b[col]:
                return False
            q = t[col] // b[col]
            t = [t[0] - q * b[0], t[1] - q * b[1]]
        return t == [0, 0]

    def random_element(self, rng: random.Random, bound: int = 10**4) -> QuadRat:
        acc = QuadRat()
        for g in self.generators:
            acc = acc + rng.randint(-bound, bound) * g
        return acc


def real_projection(d: RealSubgroupDescriptor, x: QuadRat) -> int:
    """floor((x - alpha) / w)."""
    return quad_floor((x - d.alpha) / d.witness)


def real_subgroup_structure(d: RealSubgroupDescriptor, x: QuadRat) -> QuadRat:
    if not d.contains(x):
        raise ValueError(f"{x} is not in the subgroup")
    k = real_projection(d, x)
    return k * (x - k * d.witness) + binom2(k) * d.witness


def real_subgroup_jgroup(d: RealSubgroupDescriptor) -> FunctionalJStructure:
    return FunctionalJStructure(
        name="subgroup of (R, +)",
        witness=d.witness,
        f=lambda x: real_subgroup_structure(d, x),
        op=lambda a, b: a + b,
        sample=d.random_element,
    )
