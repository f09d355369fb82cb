"""Probes around the words ``u_n = a^floor(n beta) b^n`` and their almost-centralizers.

``beta`` is an exact rational stand-in for an irrational slope, so every
strip decision below is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cancel import cancellation_distance
from .errors import BicoarseError
from .words import Word, ball, exponent_sum, invert, power, reduce, reduced_product_text


@dataclass(frozen=True)
class Slope:
    beta: Fraction = Fraction(8, 5)

    def __post_init__(self):
        b = Fraction(self.beta)
        if b <= 1:
            raise BicoarseError(f"slope must exceed 1, got {b}")
        object.__setattr__(self, "beta", b)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        return cls(Fraction(text))

    @property
    def validity(self) -> int:
        """Largest ``n`` for which this convergent is trusted (its denominator)."""
        return self.beta.denominator

    def __str__(self):
        return str(self.beta)


DEFAULT_SLOPE = Slope()


def u_word(n: int, slope: Slope = DEFAULT_SLOPE) -> Word:
    if n < 1:
        raise BicoarseError("n must be >= 1")
    p, q = slope.beta.numerator, slope.beta.denominator
    return Word("a" * (n * p // q) + "b" * n, 2)


def phi(w: Word, slope: Slope = DEFAULT_SLOPE) -> Fraction:
    """The homomorphism with ``a -> -1`` and ``b -> beta``."""
    return -exponent_sum(w, 0) + slope.beta * exponent_sum(w, 1)


def in_strip(w: Word, slope: Slope = DEFAULT_SLOPE) -> bool:
    return 0 <= phi(w, slope) < 1


def commutation_defect(u: Word, W: Word) -> int:
    """``d(uW, Wu)`` in the cancellation metric."""
    u, W = reduce(u), reduce(W)
    x = reduced_product_text(u.text, W.text)
    y = reduced_product_text(W.text, u.text)
    if x == y:
        return 0
    return cancellation_distance(Word(x, u.rank), Word(y, u.rank))


def distance_to_powers(W: Word, u: Word, k_max: int) -> tuple[int, int]:
    """``(k, d)`` minimizing ``d(W, u^k)`` over ``|k| <= k_max``; ties go to smaller ``|k|``, then ``k > 0``."""
    W = reduce(W)
    best = None
    for k in sorted(range(-k_max, k_max + 1), key=lambda k: (abs(k), k < 0)):
        d = cancellation_distance(W, power(u, k))
        if best is None or d < best[1]:
            best = (k, d)
    return best


@dataclass(frozen=True)
class SearchHit:
    word: Word
    defect: int
    nearest_power: int
    power_distance: int

    def to_json(self):
        return {"W": str(self.word), "defect": self.defect,
                "nearest_power": self.nearest_power, "power_distance": self.power_distance}


EXHAUSTIVE_CAP = 12


def _candidates(u: Word, D: int, length_cap: int, beam_width: int | None):
    if length_cap <= EXHAUSTIVE_CAP and beam_width is None:
        for W in ball(u.rank, length_cap):
            d = commutation_defect(u, W)
            if d <= D:
                yield W, d
        return
    # beam: extend the best words layer by layer
    width = beam_width or 256
    letters = sorted("abcdefghijklmnopqrstuvwxyz"[: u.rank] + "ABCDEFGHIJKLMNOPQRSTUVWXYZ"[: u.rank],
                     key=lambda ch: (ch.lower(), ch.isupper()))
    layer = [""]
    yield Word("", u.rank), 0
    for _ in range(length_cap):
        scored = []
        for t in layer:
            for ch in letters:
                if t and t[-1] == ch.swapcase():
                    continue
                W = Word(t + ch, u.rank)
                # W and W^-1 have the same defect; keep them next to each other
                pair = min(W.sort_key(), invert(W).sort_key())
                scored.append((commutation_defect(u, W), pair, W))
        scored.sort(key=lambda s: (s[0], s[1], s[2].sort_key()))
        layer = [W.text for _, _, W in scored[:width]]
        for d, _, W in scored[:width]:
            if d <= D:
                yield W, d


def almost_commuting_search(u: Word, D: int, length_cap: int, beam_width: int | None = None,
                            k_max: int | None = None) -> list[SearchHit]:
    """Reduced ``W`` with ``|W| <= length_cap`` and ``d(uW, Wu) <= D``, in shortlex order.

    Exhaustive up to length 12; beyond that (or when ``beam_width`` is given)
    only the ``beam_width`` lowest-defect words of each length are extended.
    """
    u = reduce(u)
    if k_max is None:
        k_max = length_cap // max(1, len(u)) + 1
    hits = []
    for W, d in _candidates(u, D, length_cap, beam_width):
        k, dist = distance_to_powers(W, u, k_max)
        hits.append(SearchHit(W, d, k, dist))
    hits.sort(key=lambda h: h.word.sort_key())
    return hits


__all__ = [
    "DEFAULT_SLOPE",
    "EXHAUSTIVE_CAP",
    "SearchHit",
    "Slope",
    "almost_commuting_search",
    "commutation_defect",
    "distance_to_powers",
    "in_strip",
    "phi",
    "u_word",
]
