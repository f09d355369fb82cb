"""Words in free groups of rank at most 26.

A word is stored as an ASCII string: lowercase letters are generators,
uppercase letters their inverses (``A = a^-1``).  The identity prints as ``"1"``.
"""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import AlphabetMismatch, EmptyPattern, EmptyWord, InvalidCharacter, RankExceeded

MAX_RANK = 26
IDENTITY_TOKEN = "1"


class Letter(NamedTuple):
    generator: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)

    def __str__(self):
        ch = string.ascii_lowercase[self.generator]
        return ch if self.sign > 0 else ch.upper()


class Syllable(NamedTuple):
    generator: int
    exponent: int


@dataclass(frozen=True)
class Alphabet:
    rank: int = 2

    def __post_init__(self):
        if not 1 <= self.rank <= MAX_RANK:
            raise RankExceeded(f"rank must be in [1, {MAX_RANK}], got {self.rank}")

    @property
    def symbols(self) -> str:
        low = string.ascii_lowercase[: self.rank]
        return low + low.upper()


def _sort_letter(ch: str) -> tuple:
    # a < A < b < B < ...
    return (ch.lower(), ch.isupper())


@dataclass(frozen=True)
class Word:
    """An immutable (possibly unreduced) word over ``rank`` generators.

    ``+`` concatenates letter sequences, ``*`` multiplies in the free group
    (concatenate then reduce), ``~`` inverts, ``**`` takes reduced powers.
    """

    text: str
    rank: int = 2

    def __str__(self):
        return self.text or IDENTITY_TOKEN

    def __repr__(self):
        return f"Word({str(self)!r}, rank={self.rank})"

    def __len__(self):
        return len(self.text)

    def __iter__(self) -> Iterator[Letter]:
        return (_letter(ch) for ch in self.text)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.text[item], self.rank)
        return _letter(self.text[item])

    def __add__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __mul__(self, other: "Word") -> "Word":
        return reduce(concat(self, other))

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    @property
    def letters(self) -> tuple:
        return tuple(self)

    @property
    def is_identity(self) -> bool:
        return not self.text

    @property
    def is_reduced(self) -> bool:
        t = self.text
        return all(t[i] != t[i + 1].swapcase() for i in range(len(t) - 1))

    def codes(self) -> np.ndarray:
        """Signed integer letter codes (``a -> 1``, ``A -> -1``, ``b -> 2`` ...)."""
        raw = np.frombuffer(self.text.encode("ascii"), dtype=np.uint8).astype(np.int64)
        upper = raw < 97
        return np.where(upper, -(raw - 64), raw - 96)

    def sort_key(self) -> tuple:
        """Shortlex order with letters ordered a < A < b < B < ..."""
        return (len(self.text), tuple(_sort_letter(ch) for ch in self.text))


def _letter(ch: str) -> Letter:
    return Letter(ord(ch.lower()) - 97, -1 if ch.isupper() else 1)


def letter_char(generator: int, sign: int = 1) -> str:
    ch = string.ascii_lowercase[generator]
    return ch if sign > 0 else ch.upper()


def parse(text: str, rank: int = 2) -> Word:
    """Parse the ASCII word format; ``"1"`` and ``""`` denote the identity."""
    alphabet = Alphabet(rank)
    if text == IDENTITY_TOKEN:
        return Word("", rank)
    allowed = alphabet.symbols
    for pos, ch in enumerate(text):
        if ch not in allowed:
            raise InvalidCharacter(pos, ch)
    return Word(text, rank)


def from_codes(codes, rank: int = 2) -> Word:
    return Word("".join(letter_char(abs(int(c)) - 1, int(c)) for c in codes), rank)


def _check_same(u: Word, v: Word):
    if u.rank != v.rank:
        raise AlphabetMismatch(f"rank {u.rank} vs rank {v.rank}")


def _reduce_text(text: str) -> str:
    stack = []
    for ch in text:
        if stack and stack[-1] == ch.swapcase():
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def reduce(w: Word) -> Word:
    """Free reduction by a single left-to-right stack pass."""
    return Word(_reduce_text(w.text), w.rank)


def reduced_product_text(x: str, y: str) -> str:
    """Product of two already-reduced words given as text; cancels only at the junction."""
    i, n = 0, min(len(x), len(y))
    while i < n and x[-1 - i] == y[i].swapcase():
        i += 1
    return x[: len(x) - i] + y[i:]


def invert(w: Word) -> Word:
    return Word(w.text[::-1].swapcase(), w.rank)


def concat(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(u.text + v.text, u.rank)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split a reduced word as ``w = c p c^-1`` with ``p`` cyclically reduced.

    Returns ``(c, p)``.
    """
    t = w.text
    i, j = 0, len(t) - 1
    while i < j and t[i] == t[j].swapcase():
        i += 1
        j -= 1
    return Word(t[:i], w.rank), Word(t[i: j + 1], w.rank)


def is_cyclically_reduced(w: Word) -> bool:
    t = w.text
    return w.is_reduced and (len(t) < 2 or t[0] != t[-1].swapcase())


def power(w: Word, n: int) -> Word:
    """Reduced ``n``-th power; the core is repeated, the conjugator is not."""
    w = reduce(w)
    if n < 0:
        w, n = invert(w), -n
    if n == 0 or w.is_identity:
        return Word("", w.rank)
    c, p = cyclic_reduce(w)
    return Word(c.text + p.text * n + invert(c).text, w.rank)


def occurrences(g: Word, w: Word) -> int:
    """Number of (possibly overlapping) occurrences of ``w`` as a subword of ``g``."""
    if not w.text:
        raise EmptyPattern("pattern must be nonempty")
    hay, pat = g.text, w.text
    count, i = 0, hay.find(pat)
    while i >= 0:
        count += 1
        i = hay.find(pat, i + 1)
    return count


def non_overlapping_occurrences(g: Word, w: Word) -> int:
    """Maximal number of pairwise disjoint copies of ``w`` in ``g`` (greedy is optimal)."""
    if not w.text:
        raise EmptyPattern("pattern must be nonempty")
    return g.text.count(w.text)


def _share_border(x: str, y: str) -> bool:
    # some nonempty proper prefix of x equals a suffix of y
    return any(y.endswith(x[:k]) for k in range(1, min(len(x), len(y) + 1)))


def overlaps(w1: Word, w2: Word) -> bool:
    """Subword of one another, or a nonempty piece initial in one and terminal in the other."""
    if not w1.text or not w2.text:
        raise EmptyWord("overlap is defined for nonempty words")
    a, b = w1.text, w2.text
    if a in b or b in a:
        return True
    return _share_border(a, b) or _share_border(b, a)


def border_array(w: Word) -> list[int]:
    """KMP failure function: ``out[i]`` is the longest proper border of ``w[:i+1]``."""
    t = w.text
    out = [0] * len(t)
    k = 0
    for i in range(1, len(t)):
        while k and t[i] != t[k]:
            k = out[k - 1]
        if t[i] == t[k]:
            k += 1
        out[i] = k
    return out


def is_self_overlapping(w: Word) -> bool:
    if not w.text:
        raise EmptyWord("overlap is defined for nonempty words")
    return border_array(w)[-1] > 0


def syllables(w: Word) -> list[Syllable]:
    out = []
    for ch, run in itertools.groupby(w.text):
        n = len(list(run))
        g = ord(ch.lower()) - 97
        e = -n if ch.isupper() else n
        if out and out[-1].generator == g:
            # only reachable for unreduced input such as "aA"
            out[-1] = Syllable(g, out[-1].exponent + e)
            if out[-1].exponent == 0:
                out.pop()
        else:
            out.append(Syllable(g, e))
    return out


def from_syllables(parts, rank: int = 2) -> Word:
    return Word("".join(letter_char(g, e) * abs(e) for g, e in parts), rank)


def exponent_sum(w: Word, generator: int) -> int:
    ch = letter_char(generator)
    return w.text.count(ch) - w.text.count(ch.upper())


def ball(rank: int = 2, radius: int = 3) -> list[Word]:
    """All reduced words of length <= radius in shortlex order."""
    Alphabet(rank)
    letters = sorted(Alphabet(rank).symbols, key=_sort_letter)
    out = [Word("", rank)]
    layer = [""]
    for _ in range(radius):
        nxt = []
        for t in layer:
            for ch in letters:
                if t and t[-1] == ch.swapcase():
                    continue
                nxt.append(t + ch)
        out.extend(Word(t, rank) for t in nxt)
        layer = nxt
    return out


def sphere(rank: int, length: int) -> list[Word]:
    return [w for w in ball(rank, length) if len(w) == length]


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x y x^-1 y^-1``, reduced."""
    return reduce(x + y + invert(x) + invert(y))


def random_reduced(rng, length: int, rank: int = 2) -> Word:
    letters = Alphabet(rank).symbols
    out = []
    while len(out) < length:
        ch = letters[rng.integers(len(letters))]
        if out and out[-1] == ch.swapcase():
            continue
        out.append(ch)
    return Word("".join(out), rank)


def random_word(rng, length: int, rank: int = 2) -> Word:
    letters = Alphabet(rank).symbols
    return Word("".join(letters[i] for i in rng.integers(len(letters), size=length)), rank)
