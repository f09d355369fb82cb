"""Cancellation and addition moves between reduced words.

A cancellation move deletes one letter of a reduced word and reduces; an
addition move is its inverse.  Geodesics can always be reordered so that all
cancellations come first, so the move distance between ``w1`` and ``w2`` is
``min_z down(w1, z) + down(w2, z)`` over words ``z`` reachable from both by
cancellations alone.  Additions are never enumerated forwards.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Unreached
from .words import Word, reduce


@dataclass(frozen=True)
class Move:
    """``Cancellation``: drop ``source[index]`` and reduce.

    ``Addition``: ``source = w1 w2`` with ``len(w1) == split`` becomes
    ``w1 u x u^-1 w2``.
    """

    kind: str
    index: int | None = None
    split: int | None = None
    conjugator: str = ""
    letter: str = ""

    def apply(self, source: Word) -> Word:
        t = source.text
        if self.kind == "Cancellation":
            if not 0 <= self.index < len(t):
                raise ValueError(f"index {self.index} outside word of length {len(t)}")
            return reduce(Word(t[: self.index] + t[self.index + 1:], source.rank))
        if self.kind == "Addition":
            u = self.conjugator
            inv_u = u[::-1].swapcase()
            out = Word(t[: self.split] + u + self.letter + inv_u + t[self.split:], source.rank)
            if not out.is_reduced:
                raise ValueError("addition move must produce a reduced word")
            return out
        raise ValueError(f"unknown move kind {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind == "Cancellation":
            return {"kind": self.kind, "index": self.index}
        return {"kind": self.kind, "split": self.split, "conjugator": self.conjugator or "1",
                "letter": self.letter}


@dataclass(frozen=True)
class MoveSequence:
    start: Word
    moves: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.moves)

    def replay(self) -> list[Word]:
        chain = [self.start]
        for mv in self.moves:
            chain.append(mv.apply(chain[-1]))
        return chain

    @property
    def end(self) -> Word:
        return self.replay()[-1]

    @property
    def is_normal_form(self) -> bool:
        kinds = [m.kind for m in self.moves]
        return "Cancellation" not in kinds[kinds.index("Addition"):] if "Addition" in kinds else True

    def to_json(self) -> dict:
        return {"start": str(self.start), "moves": [m.to_json() for m in self.moves],
                "end": str(self.end)}


def cancellation_neighbors(w: Word) -> set[Word]:
    t = w.text
    return {reduce(Word(t[:i] + t[i + 1:], w.rank)) for i in range(len(t))}


def _descend(w: Word, depth: int) -> dict:
    """Cancellation-only BFS: ``word -> (distance, parent, index)``.

    Word length strictly decreases along every edge, so this terminates
    after at most ``len(w)`` layers.
    """
    seen = {w: (0, None, None)}
    frontier = [w]
    for d in range(1, depth + 1):
        nxt = []
        for v in frontier:
            t = v.text
            for i in range(len(t)):
                z = reduce(Word(t[:i] + t[i + 1:], v.rank))
                if z not in seen:
                    seen[z] = (d, v, i)
                    nxt.append(z)
        if not nxt:
            break
        frontier = nxt
    return seen


def _meet(w1: Word, w2: Word, cap: int):
    if w1 == w2:
        return 0, w1, None, None
    down1 = _descend(w1, cap)
    down2 = _descend(w2, cap)
    best = None
    for z, (d1, _, _) in down1.items():
        hit = down2.get(z)
        if hit is None:
            continue
        key = (d1 + hit[0], z.sort_key())
        if best is None or key < best[0]:
            best = (key, z)
    if best is None or best[0][0] > cap:
        return None, None, down1, down2
    return best[0][0], best[1], down1, down2


def move_distance(w1: Word, w2: Word, cap: int = 32) -> int | None:
    """Move-graph distance, or ``None`` (unreached) when it exceeds ``cap``."""
    return _meet(reduce(w1), reduce(w2), cap)[0]


def _path_down(table: dict, z: Word) -> list[tuple[Word, int]]:
    """Chain of (source, index) cancellations from the BFS root down to ``z``."""
    steps = []
    while table[z][1] is not None:
        _, parent, index = table[z]
        steps.append((parent, index))
        z = parent
    return steps[::-1]


def _as_addition(source: Word, index: int) -> Move:
    """Addition move undoing the cancellation of ``source[index]``."""
    t = source.text
    left, right = t[:index], t[index + 1:]
    h = 0
    while h < len(left) and h < len(right) and left[-1 - h] == right[h].swapcase():
        h += 1
    u = left[len(left) - h:]
    return Move("Addition", split=len(left) - h, conjugator=u, letter=t[index])


def geodesic_moves(w1: Word, w2: Word, cap: int = 32) -> MoveSequence:
    """A geodesic with every cancellation before every addition.

    Meeting point tie-break: least total, then shortlex-least meeting word.
    """
    w1, w2 = reduce(w1), reduce(w2)
    d, z, down1, down2 = _meet(w1, w2, cap)
    if d is None:
        raise Unreached(f"distance between {w1} and {w2} exceeds cap {cap}")
    if d == 0:
        return MoveSequence(w1, ())
    moves = [Move("Cancellation", index=i) for _, i in _path_down(down1, z)]
    for source, index in reversed(_path_down(down2, z)):
        moves.append(_as_addition(source, index))
    return MoveSequence(w1, tuple(moves))


__all__ = [
    "Move",
    "MoveSequence",
    "cancellation_neighbors",
    "geodesic_moves",
    "move_distance",
]
