"""Exact number types: rationals, residues, truncated p-adics and Q(sqrt 2).

Rationals are :class:`fractions.Fraction`. Nothing here ever falls back to
floating point.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

BigRational = Fraction

DEFAULT_PADIC_PRECISION = 12


class NotInvertibleError(ArithmeticError):
    pass


class PrecisionError(ArithmeticError):
    """A p-adic operation would leave no certain digits, or the digit is not there."""


def default_precision() -> int:
    """Working p-adic precision, overridable through ``JGROUP_PRECISION``."""
    raw = os.environ.get("JGROUP_PRECISION")
    if raw is None:
        return DEFAULT_PADIC_PRECISION
    value = int(raw)
    if value < 1:
        raise ValueError("JGROUP_PRECISION must be a positive integer")
    return value


def binom2(x: int) -> int:
    """x(x-1)/2, for every integer x including negatives."""
    return x * (x - 1) // 2


def binom2_rational(x: Fraction) -> Fraction:
    return x * (x - 1) / 2


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, m) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class ModRing:
    """The ring Z/mZ. Elements are plain ints in [0, m)."""

    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be at least 1")

    @property
    def characteristic(self) -> int:
        return self.modulus

    def __call__(self, x: int) -> int:
        return x % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.modulus

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def inverse(self, a: int) -> int:
        return mod_inverse(a % self.modulus, self.modulus)

    def elements(self) -> range:
        return range(self.modulus)


# -- truncated p-adic integers ---------------------------------------------

@dataclass(frozen=True)
class TruncatedPAdicInt:
    """The coset ``residue + p^precision * Z_p``.

    Arithmetic keeps only digits that are certain: sums and products take
    the smaller precision, and every division by p costs one digit.
    """

    p: int
    precision: int
    residue: int

    def __post_init__(self) -> None:
        if self.p < 2 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be at least 1")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced modulo {self.p}^{self.precision}")

    @classmethod
    def of(cls, value: int, p: int, precision: int | None = None) -> TruncatedPAdicInt:
        """Embed an ordinary integer (negative values wrap)."""
        if precision is None:
            precision = default_precision()
        return cls(p, precision, value % p**precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _check(self, other: TruncatedPAdicInt) -> int:
        if not isinstance(other, TruncatedPAdicInt):
            raise TypeError(f"expected a TruncatedPAdicInt, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
        return min(self.precision, other.precision)

    def __add__(self, other: TruncatedPAdicInt | int) -> TruncatedPAdicInt:
        if isinstance(other, int):
            other = TruncatedPAdicInt.of(other, self.p, self.precision)
        n = self._check(other)
        return TruncatedPAdicInt(self.p, n, (self.residue + other.residue) % self.p**n)

    __radd__ = __add__

    def __neg__(self) -> TruncatedPAdicInt:
        return TruncatedPAdicInt(self.p, self.precision, -self.residue % self.modulus)

    def __sub__(self, other: TruncatedPAdicInt | int) -> TruncatedPAdicInt:
        return self + (-other)

    def __mul__(self, other: TruncatedPAdicInt | int) -> TruncatedPAdicInt:
        if isinstance(other, int):
            # integers are exact, so no precision is lost
            return TruncatedPAdicInt(self.p, self.precision, self.residue * other % self.modulus)
        n = self._check(other)
        return TruncatedPAdicInt(self.p, n, self.residue * other.residue % self.p**n)

    __rmul__ = __mul__

    def truncate(self, precision: int) -> TruncatedPAdicInt:
        if not 1 <= precision <= self.precision:
            raise PrecisionError(f"cannot truncate precision {self.precision} to {precision}")
        return TruncatedPAdicInt(self.p, precision, self.residue % self.p**precision)

    def congruent(self, other: TruncatedPAdicInt) -> bool:
        """Equality on the digits both values know."""
        n = self._check(other)
        return (self.residue - other.residue) % self.p**n == 0

    def valuation(self) -> int:
        """p-adic valuation, capped at the precision (residue 0 gives the precision)."""
        r, v = self.residue, 0
        if r == 0:
            return self.precision
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def to_json(self) -> dict:
        return {"p": self.p, "precision": self.precision, "residue": str(self.residue)}

    @classmethod
    def from_json(cls, data: dict) -> TruncatedPAdicInt:
        return cls(int(data["p"]), int(data["precision"]), int(str(data["residue"])))

    def __str__(self) -> str:
        return f"{self.residue} + O({self.p}^{self.precision})"


def padic_add(x: TruncatedPAdicInt, y: TruncatedPAdicInt) -> TruncatedPAdicInt:
    return x + y


def padic_mul(x: TruncatedPAdicInt, y: TruncatedPAdicInt) -> TruncatedPAdicInt:
    return x * y


def padic_exact_div2(x: TruncatedPAdicInt) -> TruncatedPAdicInt:
    """Halve a 2-adic value whose residue is even, giving up one digit."""
    if x.p != 2:
        raise ValueError("exact halving is only defined here for p = 2")
    if x.residue % 2:
        raise NotInvertibleError(f"residue {x.residue} is not divisible by 2")
    if x.precision == 1:
        raise PrecisionError("no precision left after halving")
    n = x.precision - 1
    return TruncatedPAdicInt(2, n, (x.residue // 2) % 2**n)


def padic_binom2(x: TruncatedPAdicInt) -> TruncatedPAdicInt:
    """x(x-1)/2 on Z_p. Keeps the precision for odd p, loses one digit for p = 2."""
    prod = x * (x - 1)
    if x.p == 2:
        return padic_exact_div2(prod)
    return prod * mod_inverse(2, x.modulus)


# -- the real quadratic field Q(sqrt 2) -------------------------------------

Rationalish = Union[int, Fraction]


def _sign(q: Fraction | int) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class QuadRat:
    """``a + b*sqrt(2)`` with rational a and b, ordered as a real number."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def _lift(x: QuadRat | Rationalish) -> QuadRat:
        if isinstance(x, QuadRat):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadRat(Fraction(x), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> QuadRat:
        return QuadRat(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadRat:
        return QuadRat(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        nrm = o.norm()
        if nrm == 0:  # sqrt 2 is irrational, so only zero has norm zero
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * o.conjugate()
        return QuadRat(num.a / nrm, num.b / nrm)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and 2b^2 wins
        diff = self.a * self.a - 2 * self.b * self.b
        return sa if diff > 0 else sb

    def __eq__(self, other: object) -> bool:
        o = self._lift(other) if isinstance(other, (QuadRat, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __floor__(self) -> int:
        return quad_floor(self)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        b = "" if self.b == 1 else "-" if self.b == -1 else f"{self.b}*"
        tail = f"{b}sqrt2"
        if not self.a:
            return tail
        return f"{self.a}{'' if tail.startswith('-') else '+'}{tail}"

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]


SQRT2 = QuadRat(0, 1)


def quad_floor(x: QuadRat) -> int:
    """The integer m with m <= x < m + 1, by exact sign tests only."""
    a, b = x.a, x.b
    # floor(|b|*sqrt2) = isqrt(2 p^2) // q for |b| = p/q
    p, q = abs(b.numerator), b.denominator
    t = math.isqrt(2 * p * p) // q
    est = math.floor(a) + (t if b >= 0 else -t - 1)
    m = est
    while QuadRat(a - m, b).sign() < 0:
        m -= 1
    while QuadRat(a - m - 1, b).sign() >= 0:
        m += 1
    return m


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_quadrat(text: str) -> QuadRat:
    """Parse literals such as ``3/2+2*sqrt2``, ``sqrt2/2`` or ``-1/2-sqrt2``."""
    s = text.replace(" ", "").replace("√2", "sqrt2").replace("sqrt(2)", "sqrt2")
    if not s:
        raise ValueError("empty literal")
    a = b = Fraction(0)
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sgn = -1 if m.group(1) == "-" else 1
        term = m.group(2)
        if "sqrt2" in term:
            before, _, after = term.partition("sqrt2")
            before = before.rstrip("*")
            coef = Fraction(before) if before else Fraction(1)
            if after:
                if not after.startswith("/"):
                    raise ValueError(f"cannot parse {text!r}")
                coef /= Fraction(after[1:])
            b += sgn * coef
        else:
            a += sgn * Fraction(term)
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    return QuadRat(a, b)
