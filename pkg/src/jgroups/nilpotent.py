"""Strictly upper triangular rational matrices and their BCH group law.

Matrices are numpy object arrays of :class:`fractions.Fraction`, so every
product is exact. Because the algebra is nilpotent, exp and log are
finite sums and ``x * y = log(exp(x) exp(y))`` needs no series
coefficients.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from .jrings import SampleReport

MAX_DIM = 8


def _frac_array(entries, n: int | None = None) -> np.ndarray:
    a = np.array([[Fraction(v) for v in row] for row in entries], dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if n is not None and a.shape[0] != n:
        raise ValueError(f"expected a {n}x{n} matrix")
    return a


def _zeros(n: int) -> np.ndarray:
    return np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)


def _eye(n: int) -> np.ndarray:
    a = _zeros(n)
    for i in range(n):
        a[i, i] = Fraction(1)
    return a


class _Matrix:
    __slots__ = ("entries",)

    def __init__(self, entries) -> None:
        a = entries if isinstance(entries, np.ndarray) and entries.dtype == object else _frac_array(entries)
        if not 2 <= a.shape[0] <= MAX_DIM:
            raise ValueError(f"dimension must be in 2..{MAX_DIM}, got {a.shape[0]}")
        self.entries = a
        self._validate()

    def _validate(self) -> None:
        pass

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.entries == other.entries))

    def __hash__(self) -> int:
        return hash(tuple(self.entries.flat))

    def tolist(self) -> list[list[Fraction]]:
        return self.entries.tolist()

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries.tolist()]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_json()})"


class NilpotentElement(_Matrix):
    """A strictly upper triangular matrix, i.e. an element of the Lie algebra."""

    def _validate(self) -> None:
        n = self.dim
        if any(self.entries[i, j] != 0 for i in range(n) for j in range(i + 1)):
            raise ValueError("entries on or below the diagonal must be zero")

    @classmethod
    def zero(cls, n: int) -> NilpotentElement:
        return cls(_zeros(n))

    def __add__(self, other: NilpotentElement) -> NilpotentElement:
        _same_dim(self, other)
        return NilpotentElement(self.entries + other.entries)

    def __sub__(self, other: NilpotentElement) -> NilpotentElement:
        _same_dim(self, other)
        return NilpotentElement(self.entries - other.entries)

    def __neg__(self) -> NilpotentElement:
        return NilpotentElement(-self.entries)

    def __rmul__(self, c) -> NilpotentElement:
        return NilpotentElement(self.entries * Fraction(c))

    def __bool__(self) -> bool:
        return any(v != 0 for v in self.entries.flat)

    def coefficient(self, i: int, j: int) -> Fraction:
        """Entry (i, j) in 1-based indices."""
        return self.entries[i - 1, j - 1]


class UnitriangularMatrix(_Matrix):
    """Upper triangular with ones on the diagonal; the group side of exp."""

    def _validate(self) -> None:
        n = self.dim
        for i in range(n):
            if self.entries[i, i] != 1 or any(self.entries[i, j] != 0 for j in range(i)):
                raise ValueError("matrix is not upper unitriangular")

    @classmethod
    def identity(cls, n: int) -> UnitriangularMatrix:
        return cls(_eye(n))

    def __matmul__(self, other: UnitriangularMatrix) -> UnitriangularMatrix:
        _same_dim(self, other)
        return UnitriangularMatrix(self.entries @ other.entries)

    def inverse(self) -> UnitriangularMatrix:
        # (I + N)^-1 = sum (-N)^k
        n = self.dim
        N = self.entries - _eye(n)
        acc, term = _eye(n), _eye(n)
        for _ in range(1, n):
            term = -(term @ N)
            acc = acc + term
        return UnitriangularMatrix(acc)


def _same_dim(a: _Matrix, b: _Matrix) -> None:
    if not isinstance(b, type(a)):
        raise TypeError(f"expected {type(a).__name__}, got {type(b).__name__}")
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def elementary(n: int, i: int, j: int, c=1) -> NilpotentElement:
    """c * E_ij (1-based), with i < j."""
    if not 1 <= i < j <= n:
        raise ValueError(f"E{i}{j} is not strictly upper triangular in dimension {n}")
    a = _zeros(n)
    a[i - 1, j - 1] = Fraction(c)
    return NilpotentElement(a)


_E_NAME = re.compile(r"^E(\d)(\d)$")


def parse_elementary(name: str, n: int) -> NilpotentElement:
    m = _E_NAME.match(name.strip())
    if not m:
        raise ValueError(f"expected a name like E13, got {name!r}")
    return elementary(n, int(m.group(1)), int(m.group(2)))


def basis(n: int) -> list[NilpotentElement]:
    return [elementary(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def bracket(x: NilpotentElement, y: NilpotentElement) -> NilpotentElement:
    _same_dim(x, y)
    return NilpotentElement(x.entries @ y.entries - y.entries @ x.entries)


def nil_exp(x: NilpotentElement) -> UnitriangularMatrix:
    n = x.dim
    acc, term = _eye(n), _eye(n)
    for k in range(1, n):
        term = term @ x.entries
        acc = acc + term / factorial(k)
    return UnitriangularMatrix(acc)


def nil_log(g: UnitriangularMatrix) -> NilpotentElement:
    n = g.dim
    N = g.entries - _eye(n)
    acc, term = _zeros(n), _eye(n)
    for k in range(1, n):
        term = term @ N
        acc = acc + term * Fraction((-1) ** (k + 1), k)
    return NilpotentElement(acc)


def bch_product(x: NilpotentElement, y: NilpotentElement) -> NilpotentElement:
    _same_dim(x, y)
    return nil_log(nil_exp(x) @ nil_exp(y))


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} by exact row reduction."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(A, pivots):
            v[pc] = -row[fcol]
        out.append(v)
    return out


def center_basis(n: int) -> list[NilpotentElement]:
    """A basis of the center of the strictly upper triangular algebra, computed by linear algebra."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    B = basis(n)
    # coefficient vector of [c, b] for every basis b, as linear equations in c
    rows = []
    for b in B:
        images = [bracket(e, b).entries for e in B]
        for i in range(n):
            for j in range(i + 1, n):
                rows.append([img[i, j] for img in images])
    out = []
    for v in _nullspace(rows, len(B)):
        acc = NilpotentElement.zero(n)
        for c, e in zip(v, B):
            if c:
                acc = acc + c * e
        out.append(acc)
    return out


def is_central(w: NilpotentElement) -> bool:
    return all(not bracket(w, b) for b in basis(w.dim))


@dataclass(frozen=True)
class LinearFunctional:
    """P(x) = sum of c_ij * x_ij over strictly upper entries (1-based keys)."""

    n: int
    coefficients: Mapping[tuple[int, int], Fraction]

    def __call__(self, x: NilpotentElement) -> Fraction:
        return sum((Fraction(c) * x.coefficient(i, j) for (i, j), c in self.coefficients.items()), Fraction(0))

    @classmethod
    def coordinate(cls, n: int, i: int, j: int) -> LinearFunctional:
        elementary(n, i, j)  # validates the slot
        return cls(n, {(i, j): Fraction(1)})

    @classmethod
    def from_name(cls, name: str, n: int) -> LinearFunctional:
        e = parse_elementary(name, n)
        (i, j), = [(i + 1, j + 1) for i in range(n) for j in range(n) if e.entries[i, j] != 0]
        return cls.coordinate(n, i, j)


@dataclass(frozen=True)
class NilpotentJStructure:
    """The J-structure on (g, *) for a central witness w and a functional with P(w) = 1."""

    witness: NilpotentElement
    projection: LinearFunctional

    def __call__(self, x: NilpotentElement) -> NilpotentElement:
        P, w = self.projection, self.witness
        p = P(x)
        return p * (x - p * w) + (p * (p - 1) / 2) * w

    def check(self, x: NilpotentElement) -> bool:
        lhs = self(bch_product(x, self.witness))
        rhs = bch_product(self(x), x)
        return lhs == rhs

    def verify_samples(self, count: int, rng: random.Random, bound: int = 20) -> SampleReport:
        n = self.witness.dim
        pts = [random_nilpotent(n, rng, bound) for _ in range(count)]
        failures = [x for x in pts if not self.check(x)]
        return SampleReport(count, failures, f"{count} random elements, dimension {n}")


def nilpotent_jstructure(n: int, w: NilpotentElement, P: LinearFunctional | Sequence) -> NilpotentJStructure:
    """J-structure with witness w; P may be a LinearFunctional or an n x n coefficient matrix."""
    if w.dim != n:
        raise ValueError(f"witness has dimension {w.dim}, expected {n}")
    if not isinstance(P, LinearFunctional):
        coeffs = {(i + 1, j + 1): Fraction(P[i][j]) for i in range(n) for j in range(i + 1, n) if P[i][j]}
        P = LinearFunctional(n, coeffs)
    if not w:
        raise ValueError("the witness must be non-zero")
    if not is_central(w):
        raise ValueError("the witness is not central")
    if P(w) != 1:
        raise ValueError(f"P(w) = {P(w)}, must be 1")
    return NilpotentJStructure(w, P)


def random_nilpotent(n: int, rng: random.Random, bound: int = 20) -> NilpotentElement:
    a = _zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return NilpotentElement(a)
