"""J-rings: rings whose additive group is a J-group with witness 1.

The workhorse is the binomial map ``x -> x(x-1)/2``, which satisfies
``f(x+1) = f(x) + x`` whenever the halving makes sense.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .exactnum import (
    TruncatedPAdicInt,
    binom2,
    binom2_rational,
    is_prime,
    mod_inverse,
    padic_binom2,
)
from .groups import make_cyclic
from .jstruct import JStructure, product_structure, verified


class EvenCharacteristicError(ValueError):
    """The ring has even positive characteristic, so it is not a J-ring."""


class NotUnitalSubringError(ValueError):
    pass


KINDS = ("integers", "mod", "padic", "padic-field", "rational")


@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    modulus: int | None = None
    p: int | None = None
    precision: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod" and (self.modulus is None or self.modulus < 1):
            raise ValueError("mod ring needs a modulus >= 1")
        if self.kind in ("padic", "padic-field"):
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"p-adic ring needs a prime, got {self.p}")
            if self.precision is None or self.precision < 1:
                raise ValueError("p-adic ring needs a precision >= 1")

    @classmethod
    def integers(cls) -> RingDescriptor:
        return cls("integers")

    @classmethod
    def mod(cls, m: int) -> RingDescriptor:
        return cls("mod", modulus=m)

    @classmethod
    def padic(cls, p: int, precision: int) -> RingDescriptor:
        return cls("padic", p=p, precision=precision)

    @classmethod
    def padic_field(cls, p: int, precision: int) -> RingDescriptor:
        return cls("padic-field", p=p, precision=precision)

    @classmethod
    def rational(cls) -> RingDescriptor:
        return cls("rational")

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "mod" else 0

    def one(self):
        if self.kind == "padic":
            return TruncatedPAdicInt.of(1, self.p, self.precision)
        if self.kind in ("rational", "padic-field"):
            return Fraction(1)
        return 1 % self.modulus if self.kind == "mod" else 1

    def zero(self):
        if self.kind == "padic":
            return TruncatedPAdicInt(self.p, self.precision, 0)
        if self.kind in ("rational", "padic-field"):
            return Fraction(0)
        return 0

    def add(self, a, b):
        if self.kind == "mod":
            return (a + b) % self.modulus
        return a + b

    def mul(self, a, b):
        if self.kind == "mod":
            return a * b % self.modulus
        return a * b

    def neg(self, a):
        if self.kind == "mod":
            return -a % self.modulus
        return -a

    def equal(self, a, b) -> bool:
        if self.kind == "padic":
            return a.congruent(b)
        if self.kind == "mod":
            return (a - b) % self.modulus == 0
        return a == b

    def random_element(self, rng: random.Random, bound: int = 10**6):
        if self.kind == "mod":
            return rng.randrange(self.modulus)
        if self.kind == "padic":
            return TruncatedPAdicInt(self.p, self.precision, rng.randrange(self.p**self.precision))
        if self.kind == "integers":
            return rng.randint(-bound, bound)
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __str__(self) -> str:
        if self.kind == "mod":
            return f"Z/{self.modulus}"
        if self.kind == "padic":
            return f"Z_{self.p} (precision {self.precision})"
        if self.kind == "padic-field":
            return f"Q_{self.p} (precision {self.precision})"
        return {"integers": "Z", "rational": "Q"}[self.kind]


def _reject_even(R: RingDescriptor) -> None:
    c = R.characteristic
    if c > 0 and c % 2 == 0:
        raise EvenCharacteristicError(
            f"{R} has even characteristic {c}; a ring of positive characteristic "
            "is a J-ring only when the characteristic is odd"
        )


def binomial_map(R: RingDescriptor, x):
    """``(2)^-1 * x * (x - 1)`` in R.

    For Z and the 2-adics, where 2 is not a unit, ``x(x-1)`` is halved
    exactly instead; a 2-adic input gives up one digit of precision.
    """
    _reject_even(R)
    if R.kind == "mod":
        m = R.modulus
        return mod_inverse(2, m) * x * (x - 1) % m if m > 1 else 0
    if R.kind == "integers":
        return binom2(x)
    if R.kind == "padic":
        if not isinstance(x, TruncatedPAdicInt):
            x = TruncatedPAdicInt.of(x, R.p, R.precision)
        return padic_binom2(x)
    return binom2_rational(Fraction(x))


@dataclass
class SampleReport:
    """Exact axiom checks of an infinite structure on a finite sample or window."""

    checks: int
    failures: list = field(default_factory=list)
    domain: str = ""

    @property
    def valid(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "checks": self.checks,
            "failures": [str(f) for f in self.failures[:20]],
            "failure_count": len(self.failures),
            "domain": self.domain,
        }


@dataclass(frozen=True)
class FunctionalJStructure:
    """A J-structure given by formulas, for groups too large to tabulate.

    ``op`` is the group law and ``eq`` the equality to use (p-adic values
    compare on their common digits).
    """

    name: str
    witness: Any
    f: Callable[[Any], Any]
    op: Callable[[Any, Any], Any]
    sample: Callable[[random.Random], Any]
    eq: Callable[[Any, Any], bool] = lambda a, b: a == b

    def __call__(self, x):
        return self.f(x)

    def check(self, x) -> bool:
        """The J2 axiom ``f(x*w) == f(x)*x`` at one point."""
        return self.eq(self.f(self.op(x, self.witness)), self.op(self.f(x), x))

    def verify_points(self, points, domain: str = "") -> SampleReport:
        points = list(points)
        failures = [x for x in points if not self.check(x)]
        return SampleReport(len(points), failures, domain)

    def verify_samples(self, count: int, rng: random.Random) -> SampleReport:
        return self.verify_points((self.sample(rng) for _ in range(count)), f"{count} random samples")


def ring_to_jgroup(R: RingDescriptor) -> JStructure | FunctionalJStructure:
    """The additive group of R with witness 1 and the binomial map.

    Finite rings come back as verified tables; infinite ones as formulas.
    """
    _reject_even(R)
    if R.kind == "mod":
        m = R.modulus
        return verified(JStructure(make_cyclic(m), 1 % m, [binomial_map(R, x) for x in range(m)]))
    return FunctionalJStructure(
        name=f"({R}, +)",
        witness=R.one(),
        f=lambda x: binomial_map(R, x),
        op=R.add,
        sample=R.random_element,
        eq=R.equal,
    )


@dataclass(frozen=True)
class MultiplesOf:
    """The subset kZ of an ambient ring (unital only for k = +-1)."""

    k: int
    ambient: RingDescriptor


def _v_p_nonneg(q: Fraction, p: int) -> bool:
    return q.denominator % p != 0


def subring_restriction_check(R: RingDescriptor, S: RingDescriptor | MultiplesOf, window: int = 1000) -> bool:
    """Does the binomial map of R send S into S?

    Supported embeddings: Z in Q (symbolic, plus a window check), Z_p in
    Q_p at a fixed number of digits (exhaustive over residues), and kZ
    in Z or Q.
    """
    _reject_even(R)
    if isinstance(S, MultiplesOf):
        if abs(S.k) != 1:
            raise NotUnitalSubringError(f"{S.k}Z does not contain 1, so it is not a unital subring")
        S = RingDescriptor.integers()
    if R.kind == "rational" and S.kind == "integers":
        # x(x-1) is a product of consecutive integers, hence even
        return all(binomial_map(R, Fraction(x)).denominator == 1 for x in range(-window, window + 1))
    if R.kind == "padic-field" and S.kind == "padic" and R.p == S.p:
        p, n = S.p, S.precision
        return all(_v_p_nonneg(binom2_rational(Fraction(r)), p) for r in range(p**n))
    if R.kind == S.kind and R == S:
        return True
    raise ValueError(f"no embedding of {S} in {R} is supported")


# -- products at finite truncation ------------------------------------------

@dataclass(frozen=True)
class ProfiniteProductDescriptor:
    """Torsion factors (p, i, m) for (Z/p^i)^m, or torsion-free (p, m) for (Z_p)^m."""

    torsion: tuple[tuple[int, int, int], ...] = ()
    padic: tuple[tuple[int, int], ...] = ()
    truncation: int = 12

    def __post_init__(self) -> None:
        if self.torsion and self.padic:
            raise ValueError("torsion and torsion-free factors cannot be mixed in one descriptor")
        for p, i, m in self.torsion:
            if not is_prime(p) or i < 1 or m < 0:
                raise ValueError(f"bad torsion factor {(p, i, m)}")
        for p, m in self.padic:
            if not is_prime(p) or m < 0:
                raise ValueError(f"bad p-adic factor {(p, m)}")

    def factor_rings(self) -> list[RingDescriptor]:
        if self.torsion:
            return [RingDescriptor.mod(p**i) for p, i, m in self.torsion for _ in range(m)]
        return [RingDescriptor.padic(p, self.truncation) for p, m in self.padic for _ in range(m)]


def parse_torsion(text: str) -> tuple[tuple[int, int, int], ...]:
    """``"3:2:1,5:1:2"`` -> ((3, 2, 1), (5, 1, 2))."""
    out = []
    for part in text.split(","):
        fields = [int(v) for v in part.split(":")]
        if len(fields) != 3:
            raise ValueError(f"torsion factor must be p:i:m, got {part!r}")
        out.append(tuple(fields))
    return tuple(out)


def parse_padic_factors(text: str) -> tuple[tuple[int, int], ...]:
    """``"2:1,3:2"`` -> ((2, 1), (3, 2)); a bare prime means multiplicity 1."""
    out = []
    for part in text.split(","):
        fields = [int(v) for v in part.split(":")]
        if len(fields) == 1:
            fields.append(1)
        if len(fields) != 2:
            raise ValueError(f"p-adic factor must be p[:m], got {part!r}")
        out.append(tuple(fields))
    return tuple(out)


def profinite_product(d: ProfiniteProductDescriptor) -> JStructure | FunctionalJStructure:
    """Componentwise binomial structure with witness (1, ..., 1).

    Torsion products are tabulated and verified exhaustively; every prime
    must be odd, otherwise an element of even order exists.
    """
    rings = d.factor_rings()
    if not rings:
        raise ValueError("descriptor has no factors")
    if d.torsion:
        evens = [p for p, i, m in d.torsion if p == 2 and m > 0]
        if evens:
            raise EvenCharacteristicError(
                "a torsion factor Z/2^i has elements of even order; a torsion group "
                "is a J-group only if every element has odd order"
            )
        s = ring_to_jgroup(rings[0])
        for R in rings[1:]:
            s = product_structure(s, ring_to_jgroup(R))
        return s

    def f(xs: Sequence[TruncatedPAdicInt]):
        return tuple(padic_binom2(x) for x in xs)

    return FunctionalJStructure(
        name=" x ".join(str(R) for R in rings),
        witness=tuple(R.one() for R in rings),
        f=f,
        op=lambda a, b: tuple(x + y for x, y in zip(a, b)),
        sample=lambda rng: tuple(R.random_element(rng) for R in rings),
        eq=lambda a, b: all(x.congruent(y) for x, y in zip(a, b)),
    )
