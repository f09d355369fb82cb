"""Quasimorphisms of free groups, evaluated exactly.

Every value is a ``Fraction``; Brooks and Rolli quasimorphisms with integer
tables are integer-valued.  Ball sweeps give *lower bounds* on the true
defect, never the defect itself.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .cancel import cancellation_distance
from .errors import BallTooLarge, InvalidQuasimorphism
from .words import (Word, ball, exponent_sum, invert, non_overlapping_occurrences, occurrences, parse,
                    power, reduce, reduced_product_text)

MAX_BALL_RADIUS = 7


class Quasimorphism:
    """Base class; subclasses implement ``value_of`` on reduced word text."""

    rank = 2

    def __call__(self, g: Word) -> Fraction:
        return Fraction(self.value_of(reduce(g).text))

    def value_of(self, text: str):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Brooks(Quasimorphism):
    """``C_w - C_{w^-1}`` with overlapping occurrences counted."""

    pattern: Word

    def __post_init__(self):
        if not len(self.pattern) or not self.pattern.is_reduced:
            raise InvalidQuasimorphism("Brooks pattern must be nonempty and reduced")

    @property
    def rank(self):
        return self.pattern.rank

    def value_of(self, text):
        g = Word(text, self.rank)
        return occurrences(g, self.pattern) - occurrences(g, invert(self.pattern))

    def to_json(self):
        return {"brooks": str(self.pattern)}


@dataclass(frozen=True)
class BrooksNonOverlap(Brooks):
    """Same as :class:`Brooks` but counting maximal disjoint copies."""

    def value_of(self, text):
        g = Word(text, self.rank)
        return (non_overlapping_occurrences(g, self.pattern)
                - non_overlapping_occurrences(g, invert(self.pattern)))

    def to_json(self):
        return {"brooksNO": str(self.pattern)}


@dataclass(frozen=True)
class Rolli(Quasimorphism):
    """Sum of ``alpha(k)`` over the syllable exponents ``k`` of the reduced word.

    ``alpha`` is given on its positive support and extended oddly.
    """

    alpha: tuple  # sorted ((k, value), ...) with k > 0
    rank: int = 2

    @classmethod
    def from_table(cls, table: dict, rank: int = 2) -> "Rolli":
        positive = {}
        for key, value in table.items():
            k, v = int(key), Fraction(value)
            if k == 0:
                if v != 0:
                    raise InvalidQuasimorphism("alpha(0) must vanish")
                continue
            if k < 0:
                k, v = -k, -v
            if k in positive and positive[k] != v:
                raise InvalidQuasimorphism(f"alpha is not odd at {k}")
            positive[k] = v
        return cls(tuple(sorted(positive.items())), rank)

    def __post_init__(self):
        table = {k: (int(v) if Fraction(v).denominator == 1 else Fraction(v)) for k, v in self.alpha}
        object.__setattr__(self, "_table", table)

    def value(self, k: int) -> Fraction:
        v = self._table.get(abs(k), 0)
        return Fraction(v if k > 0 else -v)

    def value_of(self, text):
        table = self._table
        total = 0
        for ch, run in itertools.groupby(text):
            v = table.get(len(list(run)))
            if v is not None:
                total += -v if ch.isupper() else v
        return total

    def to_json(self):
        return {"rolli": {str(k): _num_json(v) for k, v in self.alpha}}


@dataclass(frozen=True)
class ExponentHom(Quasimorphism):
    """The homomorphism ``g -> sum_s coeff_s * exponent_sum(g, s)``."""

    coefficients: tuple

    @property
    def rank(self):
        return len(self.coefficients)

    def value_of(self, text):
        g = Word(text, self.rank)
        return sum((Fraction(c) * exponent_sum(g, i) for i, c in enumerate(self.coefficients)),
                   Fraction(0))

    def to_json(self):
        return {"hom": {chr(97 + i): _num_json(c) for i, c in enumerate(self.coefficients)}}


def _num_json(x: Fraction):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def from_json(spec, rank: int = 2) -> Quasimorphism:
    """Build a quasimorphism from its JSON spec (dict or JSON text)."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or len(spec) != 1:
        raise InvalidQuasimorphism("spec must be an object with exactly one key")
    (kind, body), = spec.items()
    if kind == "brooks":
        return Brooks(parse(body, rank))
    if kind == "brooksNO":
        return BrooksNonOverlap(parse(body, rank))
    if kind == "rolli":
        return Rolli.from_table(body, rank)
    if kind == "hom":
        coeffs = [Fraction(0)] * rank
        for key, value in body.items():
            gen = ord(key) - 97
            if not 0 <= gen < rank:
                raise InvalidQuasimorphism(f"generator {key!r} outside rank {rank}")
            coeffs[gen] = Fraction(value)
        return ExponentHom(tuple(coeffs))
    raise InvalidQuasimorphism(f"unknown quasimorphism kind {kind!r}")


def evaluate(q: Quasimorphism, g: Word) -> Fraction:
    return q(g)


@dataclass(frozen=True)
class DefectEstimate:
    """``value = |q(gh) - q(g) - q(h)|`` at the witness; a lower bound on the defect."""

    value: Fraction
    radius: int
    witness: tuple

    def to_json(self):
        return {"value": _num_json(self.value), "radius": self.radius, "lower_bound": True,
                "witness": [str(w) for w in self.witness] if self.witness else None}


def _ball_for(q: Quasimorphism, radius: int, max_radius: int):
    if radius > max_radius:
        raise BallTooLarge(f"radius {radius} exceeds the enumeration limit {max_radius}")
    return ball(q.rank, radius)


def defect_on_ball(q: Quasimorphism, radius: int, max_radius: int = MAX_BALL_RADIUS) -> DefectEstimate:
    """Max of ``|q(gh) - q(g) - q(h)|`` over the reduced ball; first witness in shortlex order."""
    sample = _ball_for(q, radius, max_radius)
    texts = [g.text for g in sample]
    values = [q.value_of(t) for t in texts]
    best, witness = 0, None
    for i, x in enumerate(texts):
        qx = values[i]
        for j, y in enumerate(texts):
            v = abs(q.value_of(reduced_product_text(x, y)) - qx - values[j])
            if v > best:
                best, witness = v, (sample[i], sample[j])
    return DefectEstimate(Fraction(best), radius, witness)


def homogenize(q: Quasimorphism, g: Word, n: int, defect=None, radius: int = 3):
    """``q(g^n) / n`` with error bound ``D / n``.

    ``defect`` defaults to the ball estimate at ``radius``, which is only a
    lower bound for the true defect.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    estimate = q(power(g, n)) / n
    if isinstance(q, ExponentHom):
        return estimate, Fraction(0)
    if defect is None:
        defect = defect_on_ball(q, radius).value
    return estimate, Fraction(defect) / n


def doubling_sequence(q: Quasimorphism, g: Word, steps: int) -> list[Fraction]:
    """``q(g^(2^k)) / 2^k`` for ``k = 0..steps``."""
    return [q(power(g, 2 ** k)) / 2 ** k for k in range(steps + 1)]


def controlledness_modulus(q: Quasimorphism, radius: int, max_radius: int = MAX_BALL_RADIUS,
                           metric=cancellation_distance) -> list[Fraction]:
    """``rho(r) = max |q(g) - q(h)|`` over ball pairs with ``d(g, h) <= r``, ``r = 0..radius``."""
    sample = _ball_for(q, radius, max_radius)
    values = [q.value_of(g.text) for g in sample]
    by_distance = [0] * (2 * radius + 1)
    for i, g in enumerate(sample):
        for j in range(i + 1, len(sample)):
            d = metric(g, sample[j])
            diff = abs(values[i] - values[j])
            if diff > by_distance[d]:
                by_distance[d] = diff
    rho, running = [], 0
    for r in range(radius + 1):
        running = max(running, by_distance[r])
        rho.append(Fraction(running))
    return rho


__all__ = [
    "Brooks",
    "BrooksNonOverlap",
    "DefectEstimate",
    "ExponentHom",
    "Quasimorphism",
    "Rolli",
    "controlledness_modulus",
    "defect_on_ball",
    "doubling_sequence",
    "evaluate",
    "from_json",
    "homogenize",
]
