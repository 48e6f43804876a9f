"""Exponent sequences, checked on finite windows.

A sequence of nonzero integers n_k is an exponent sequence for x when
x^(n_k) tends to the identity. Only finitely many terms are ever
available, so convergence is read as follows:

* in a finite group, the trailing half of the listed terms (at least one)
  all send x to the identity;
* in Z_p, the valuation of n_k * x reaches the target and never drops
  afterwards.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exactnum import TruncatedPAdicInt, binom2
from .groups import FiniteGroup, centralizer
from .jrings import FunctionalJStructure
from .jstruct import JStructure


@dataclass(frozen=True)
class ExponentSequence:
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if not self.terms:
            raise ValueError("an exponent sequence needs at least one term")
        if any(t == 0 for t in self.terms):
            raise ValueError("exponent sequence terms must be nonzero")

    @classmethod
    def geometric(cls, base: int, count: int = 10) -> ExponentSequence:
        """base, base^2, ..., base^count."""
        return cls(tuple(base**k for k in range(1, count + 1)))

    @classmethod
    def constant(cls, value: int, count: int = 10) -> ExponentSequence:
        return cls((value,) * count)

    @classmethod
    def parse(cls, text: str) -> ExponentSequence:
        """``geometric:3[:count]``, ``constant:7[:count]`` or a comma list ``3,9,27``."""
        kind, _, rest = text.partition(":")
        if kind in ("geometric", "constant"):
            args = [int(a) for a in rest.split(":")]
            return getattr(cls, kind)(*args)
        return cls(tuple(int(t) for t in text.split(",")))

    def __len__(self) -> int:
        return len(self.terms)

    def tail_start(self) -> int:
        return len(self.terms) // 2


def check_exponent_sequence_finite(G: FiniteGroup, x: int, s: ExponentSequence) -> bool:
    return all(G.power(x, n) == G.identity for n in s.terms[s.tail_start():])


def valuation_track(x: TruncatedPAdicInt, s: ExponentSequence) -> list[int]:
    return [(x * n).valuation() for n in s.terms]


def _reaches_and_stays(vals: list[int], target: int) -> bool:
    k = next((i for i, v in enumerate(vals) if v >= target), None)
    if k is None:
        return False
    tail = vals[k:]
    return all(a <= b for a, b in zip(tail, tail[1:]))


def check_exponent_sequence_padic(
    p: int, precision: int, x: TruncatedPAdicInt, s: ExponentSequence, valuation_target: int
) -> bool:
    if valuation_target > precision:
        raise ValueError(f"valuation target {valuation_target} exceeds the precision {precision}")
    if x.p != p:
        raise ValueError(f"element is {x.p}-adic, expected p = {p}")
    if x.precision != precision:
        x = x.truncate(precision) if x.precision > precision else x
    return _reaches_and_stays(valuation_track(x, s), valuation_target)


@dataclass
class PropagationReport:
    witness_passes: bool
    samples: int
    failures: list = field(default_factory=list)
    # valuations (p-adic) of binom(n_k, 2) * w, or whether w^binom(n_k, 2) is trivial (finite)
    binom_track: list = field(default_factory=list)
    valuation_target: int | None = None
    domain: str = ""

    @property
    def all_passed(self) -> bool:
        return self.witness_passes and not self.failures

    def to_dict(self) -> dict:
        return {
            "witness_passes": self.witness_passes,
            "samples": self.samples,
            "failures": [str(f) for f in self.failures],
            "binom_track": self.binom_track,
            "valuation_target": self.valuation_target,
            "domain": self.domain,
            "all_passed": self.all_passed,
        }


class SequenceRejected(ValueError):
    """The sequence is not an exponent sequence for the witness."""


def pointwise_propagation_demo(
    structure: JStructure | FunctionalJStructure,
    s: ExponentSequence,
    sample_count: int,
    rng: random.Random | None = None,
    valuation_target: int | None = None,
) -> PropagationReport:
    """Check that an exponent sequence for a central witness works for every sampled element.

    Also checks the intermediate step: binom(n_k, 2) * w tends to zero.
    For a p-adic structure the default target is the highest valuation the
    witness reaches along the sequence (at least 1). A finite structure is
    checked on every element of the witness's centralizer.
    """
    rng = rng or random.Random(0)
    if isinstance(structure, JStructure):
        return _finite_demo(structure, s)
    w = structure.witness
    if not isinstance(w, TruncatedPAdicInt):
        raise TypeError("only finite or single-factor p-adic structures are supported")
    p, n = w.p, w.precision
    track = valuation_track(w, s)
    if valuation_target is None:
        valuation_target = min(n, max(1, max(track)))
    if not check_exponent_sequence_padic(p, n, w, s, valuation_target):
        raise SequenceRejected(
            f"valuations {track} of n_k * w never reach {valuation_target}; not an exponent sequence for the witness"
        )
    binom_vals = [(w * binom2(k)).valuation() for k in s.terms]
    failures = []
    if not _reaches_and_stays(binom_vals, valuation_target):
        failures.append(("binom", binom_vals))
    for _ in range(sample_count):
        x = structure.sample(rng)
        if not check_exponent_sequence_padic(p, n, x, s, valuation_target):
            failures.append(x)
    return PropagationReport(True, sample_count, failures, binom_vals, valuation_target, f"Z_{p} at precision {n}")


def _finite_demo(st: JStructure, s: ExponentSequence) -> PropagationReport:
    G, w = st.group, st.witness
    if not check_exponent_sequence_finite(G, w, s):
        raise SequenceRejected("the sequence does not send the witness to the identity")
    binom_ok = [G.power(w, binom2(k)) == G.identity for k in s.terms]
    cent = centralizer(G, w).elements()
    failures = [x for x in cent if not check_exponent_sequence_finite(G, x, s)]
    if not all(binom_ok[s.tail_start():]):
        failures.append(("binom", binom_ok))
    domain = G.name if len(cent) == G.order else f"centralizer of {w} in {G.name}"
    return PropagationReport(True, len(cent), failures, binom_ok, None, domain)
