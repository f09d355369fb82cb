"""Cancellation length and the bi-invariant word metric on free groups.

The cancellation length of a word is the least number of letters to delete so
that the rest freely reduces to the identity.  Equivalently it is
``len(w) - 2 * M(w)`` where ``M(w)`` is a maximum non-crossing matching of
mutually inverse letters, computed by a cubic interval DP.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import OracleBoundExceeded
from .words import Word, commutator, invert, parse, reduce

DEFAULT_ORACLE_BOUND = 16


def oracle_bound() -> int:
    return int(os.environ.get("BICOARSE_ORACLE_BOUND", DEFAULT_ORACLE_BOUND))


def cancellation_length(w: Word) -> int:
    """``|w|_x`` of the letter sequence as given (unreduced input allowed)."""
    n = len(w)
    if n < 2:
        return n
    return n - 2 * kernels.max_matching(w.codes())


def cancellation_distance(w1: Word, w2: Word) -> int:
    """``d_x(w1, w2) = |w1^-1 w2|_x``."""
    return cancellation_length(reduce(invert(w1) + w2))


def cancellation_length_oracle(w: Word, bound: int | None = None) -> int:
    """Exponential brute force over deletion subsets; independent of the DP."""
    bound = oracle_bound() if bound is None else bound
    if len(w) > bound:
        raise OracleBoundExceeded(f"word length {len(w)} exceeds oracle bound {bound}")
    if not len(w):
        return 0
    return kernels.min_deletions_bruteforce(w.codes())


@dataclass(frozen=True)
class CancellationCertificate:
    """Deleted positions plus a non-crossing matching of inverse letter pairs."""

    deleted: tuple
    matching: tuple

    @property
    def length(self) -> int:
        return len(self.deleted)

    def to_json(self) -> dict:
        return {"deleted": list(self.deleted), "matching": [list(p) for p in self.matching]}

    def problems(self, w: Word) -> list[str]:
        """Everything wrong with this certificate for ``w``; empty means valid."""
        out = []
        n = len(w)
        text = w.text
        seen = list(self.deleted)
        for i, j in self.matching:
            if not 0 <= i < j < n:
                out.append(f"bad pair {(i, j)}")
                continue
            if text[i] != text[j].swapcase():
                out.append(f"pair {(i, j)} is not an inverse pair")
            seen += [i, j]
        if sorted(seen) != list(range(n)):
            out.append("deleted positions and matched endpoints do not partition the word")
        if list(self.deleted) != sorted(self.deleted):
            out.append("deleted positions not sorted")
        pairs = sorted(self.matching)
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                (i, j), (k, l) = pairs[a], pairs[b]
                if i < k < j < l:
                    out.append(f"pairs {(i, j)} and {(k, l)} cross")
        return out

    def verify(self, w: Word) -> bool:
        return not self.problems(w)


def certificate(w: Word) -> CancellationCertificate:
    """A witness of ``cancellation_length(w)``; backtracking prefers the smallest partner."""
    codes = w.codes()
    n = len(codes)
    M = kernels.match_table(codes) if n else np.zeros((2, 1), dtype=np.int64)
    deleted, matching = [], []
    todo = [(0, n)]
    while todo:
        i, j = todo.pop()
        while i < j:
            target = M[i, j]
            for k in range(i + 1, j):
                if codes[k] == -codes[i] and 1 + M[i + 1, k] + M[k + 1, j] == target:
                    matching.append((i, k))
                    todo.append((k + 1, j))
                    i, j = i + 1, k
                    break
            else:
                deleted.append(i)
                i += 1
    return CancellationCertificate(tuple(sorted(deleted)), tuple(sorted(matching)))


def commutator_norm_table(n_max: int, rank: int = 2) -> dict:
    """``|[a^n, b^m]|_x`` for ``1 <= n <= m <= n_max``.

    The diagonal ``n == m`` is included for reference; only ``n < m`` is
    covered by the closed form ``2n``.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    a, b = parse("a", rank), parse("b", rank)
    table = {}
    for n in range(1, n_max + 1):
        for m in range(n, n_max + 1):
            table[(n, m)] = cancellation_length(commutator(a ** n, b ** m))
    return table
