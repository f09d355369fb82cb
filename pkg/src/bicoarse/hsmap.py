"""Word maps of free groups built from unique decompositions.

Three constructions: replacement maps swapping two non-overlapping words,
wobbling maps permuting the exponents of a fixed base word, and local maps
that substitute a target word for every length-``k`` window.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .cancel import cancellation_distance
from .errors import AsymmetricRule, InvalidBase, InvalidPieceSet
from .words import Word, invert, is_cyclically_reduced, is_self_overlapping, overlaps, parse, reduce


@dataclass(frozen=True)
class PieceSet:
    pieces: tuple

    def __post_init__(self):
        uniq = tuple(dict.fromkeys(self.pieces))
        object.__setattr__(self, "pieces", uniq)
        for p in uniq:
            if not len(p) or not p.is_reduced:
                raise InvalidPieceSet(f"piece {p} must be nonempty and reduced", (p,))
            if is_self_overlapping(p):
                raise InvalidPieceSet(f"piece {p} is self-overlapping", (p,))
        for p, r in itertools.combinations(uniq, 2):
            if overlaps(p, r):
                raise InvalidPieceSet(f"pieces {p} and {r} overlap", (p, r))


def decompose(v: Word, pieces: PieceSet) -> list[Word]:
    """Minimal factorization of ``v`` into pieces and piece-free words.

    Pieces cannot overlap, so their occurrences are disjoint and a single
    leftmost scan finds all of them; maximal gaps in between are the
    piece-free factors.
    """
    if not isinstance(pieces, PieceSet):
        pieces = PieceSet(tuple(pieces))
    t = v.text
    texts = [p.text for p in pieces.pieces]
    out, gap, i = [], [], 0
    while i < len(t):
        hit = next((p for p in texts if t.startswith(p, i)), None)
        if hit is None:
            gap.append(t[i])
            i += 1
            continue
        if gap:
            out.append(Word("".join(gap), v.rank))
            gap = []
        out.append(Word(hit, v.rank))
        i += len(hit)
    if gap or not out:
        out.append(Word("".join(gap), v.rank))
    return out


@dataclass(frozen=True)
class ReplacementRule:
    w1: Word
    w2: Word

    def __post_init__(self):
        a, b = self.w1.text, self.w2.text
        if not a or not b or a[0] != b[0] or a[-1] != b[-1]:
            raise InvalidPieceSet("replacement words must share first and last letter", (self.w1, self.w2))
        if a == b:
            raise InvalidPieceSet("replacement words must differ", (self.w1, self.w2))
        object.__setattr__(self, "pieces",
                           PieceSet((self.w1, invert(self.w1), self.w2, invert(self.w2))))

    @property
    def table(self) -> dict:
        w1, w2 = self.w1.text, self.w2.text
        return {w1: w2, w2: w1, invert(self.w1).text: invert(self.w2).text,
                invert(self.w2).text: invert(self.w1).text}

    @classmethod
    def from_json(cls, spec, rank: int = 2) -> "ReplacementRule":
        return cls(parse(spec["w1"], rank), parse(spec["w2"], rank))

    def to_json(self):
        return {"w1": str(self.w1), "w2": str(self.w2)}


def replacement_apply(rule: ReplacementRule, g: Word) -> Word:
    g = reduce(g)
    swap = rule.table
    parts = [swap.get(u.text, u.text) for u in decompose(g, rule.pieces)]
    return reduce(Word("".join(parts), g.rank))


def _check_base(v: Word):
    if not len(v) or not is_cyclically_reduced(v):
        raise InvalidBase(f"base {v} must be nonempty and cyclically reduced")
    if is_self_overlapping(v):
        raise InvalidBase(f"base {v} is self-overlapping")


def power_decompose(w: Word, v: Word) -> list:
    """``[u0, k1, u1, ..., kn, un]`` with ``w = u0 v^k1 u1 ... v^kn un``.

    Runs of ``v`` or ``v^-1`` are taken maximal, so no ``u_i`` contains
    ``v^{+-1}`` and interior ``u_i`` are nonempty.
    """
    _check_base(v)
    w = reduce(w)
    t, p, q = w.text, v.text, invert(v).text
    out, gap, i = [], [], 0
    while i < len(t):
        if t.startswith(p, i) or t.startswith(q, i):
            unit = p if t.startswith(p, i) else q
            k = 0
            while t.startswith(unit, i):
                k += 1
                i += len(unit)
            out += [Word("".join(gap), w.rank), k if unit is p else -k]
            gap = []
        else:
            gap.append(t[i])
            i += 1
    out.append(Word("".join(gap), w.rank))
    return out


def reassemble(parts: list, v: Word) -> Word:
    """Inverse of :func:`power_decompose` (no reduction applied)."""
    text = parts[0].text
    for k, u in zip(parts[1::2], parts[2::2]):
        text += (v.text if k > 0 else invert(v).text) * abs(k) + u.text
    return Word(text, v.rank)


@dataclass(frozen=True)
class Wobble:
    """A base word and a finitely supported permutation of the positive integers."""

    v: Word
    sigma: tuple  # sorted ((k, sigma(k)), ...) on the support

    def __post_init__(self):
        _check_base(self.v)
        keys = [k for k, _ in self.sigma]
        vals = [s for _, s in self.sigma]
        if any(k < 1 for k in keys) or sorted(keys) != sorted(vals) or len(set(keys)) != len(keys):
            raise InvalidBase("sigma must be a bijection of its positive support")

    @classmethod
    def from_mapping(cls, v: Word, mapping: dict) -> "Wobble":
        return cls(v, tuple(sorted((int(k), int(s)) for k, s in mapping.items() if int(k) != int(s))))

    @classmethod
    def from_json(cls, spec, rank: int = 2) -> "Wobble":
        return cls.from_mapping(parse(spec["v"], rank), spec.get("sigma", {}))

    def to_json(self):
        return {"v": str(self.v), "sigma": {str(k): s for k, s in self.sigma}}

    def inverse(self) -> "Wobble":
        return Wobble(self.v, tuple(sorted((s, k) for k, s in self.sigma)))

    def signed(self, k: int) -> int:
        table = dict(self.sigma)
        return table.get(k, k) if k > 0 else -table.get(-k, -k)


def wobbling_apply_raw(wob: Wobble, g: Word) -> Word:
    parts = power_decompose(g, wob.v)
    parts[1::2] = [wob.signed(k) for k in parts[1::2]]
    return reassemble(parts, wob.v)


def wobbling_apply(wob: Wobble, g: Word) -> Word:
    return reduce(wobbling_apply_raw(wob, g))


@dataclass(frozen=True)
class LocalRule:
    """Substitution table from length-``k`` windows to words of the target group."""

    k: int
    table: tuple  # sorted ((window_text, target_word), ...)
    target_rank: int = 1

    def __post_init__(self):
        lookup = dict(self.table)
        for window, image in lookup.items():
            if len(window) != self.k:
                raise AsymmetricRule(f"window {window!r} does not have length {self.k}")
            mirror = window[::-1].swapcase()
            want = invert(image)
            got = lookup.get(mirror, Word("", self.target_rank))
            if reduce(got) != reduce(want):
                raise AsymmetricRule(f"r({mirror}) must equal r({window})^-1 = {want}")
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_json(cls, spec, rank: int = 2) -> "LocalRule":
        if isinstance(spec, str):
            spec = json.loads(spec)
        target_rank = int(spec.get("target_rank", rank))
        table = tuple(sorted((str(parse(w, rank).text), parse(img, target_rank))
                             for w, img in spec["table"].items()))
        return cls(int(spec["k"]), table, target_rank)

    def to_json(self):
        return {"k": self.k, "table": {w: str(img) for w, img in self.table},
                "target_rank": self.target_rank}

    def image(self, window: str) -> Word:
        return self._lookup.get(window, Word("", self.target_rank))


def local_apply(rule: LocalRule, g: Word) -> Word:
    """Product of ``r`` over all sliding windows of the reduced word, reduced."""
    t = reduce(g).text
    if len(t) < rule.k:
        return Word("", rule.target_rank)
    text = "".join(rule.image(t[i: i + rule.k]).text for i in range(len(t) - rule.k + 1))
    return reduce(Word(text, rule.target_rank))


def splitting_defect(f, words, metric=cancellation_distance):
    """Max ``d(f(w1 w2), f(w1) f(w2))`` over pairs whose concatenation is already reduced.

    Returns ``(value, witness_pair)``.
    """
    best, witness = 0, None
    for w1 in words:
        for w2 in words:
            joined = w1 + w2
            if not joined.is_reduced:
                continue
            d = metric(f(joined), f(w1) * f(w2))
            if d > best:
                best, witness = d, (w1, w2)
    return best, witness
