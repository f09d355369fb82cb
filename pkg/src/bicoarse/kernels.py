"""Hot inner loops, each in a numba flavour and a pure-numpy flavour.

Letters are encoded as nonzero signed integers: generator ``g`` is ``g + 1``
and its inverse is ``-(g + 1)``.  The public names at the bottom of the module
(``match_table``, ``min_deletions_bruteforce``, ``signed_sumset_layers``) are
bound to the numba versions unless ``BICOARSE_NUMBA=0``.
"""
import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit

# ---------------------------------------------------------------------------
# Interval DP for maximum non-crossing inverse-pair matching.
#
# M[i, j] is the size of a maximum matching inside the half-open slice
# codes[i:j].  M[i, j] = max(M[i+1, j],
#                            max_{i<k<j, codes[k] == -codes[i]} 1 + M[i+1, k] + M[k+1, j])
# ---------------------------------------------------------------------------


def match_table_numpy(codes):
    codes = np.asarray(codes, dtype=np.int64)
    n = codes.shape[0]
    M = np.zeros((n + 2, n + 1), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        row = M[i + 1].copy()
        partners = np.nonzero(codes[i + 1:] == -codes[i])[0] + i + 1
        for k in partners:
            cand = 1 + M[i + 1, k] + M[k + 1, k + 1:]
            np.maximum(row[k + 1:], cand, out=row[k + 1:])
        row[: i + 1] = 0
        M[i] = row
    return M


@njit(cache=True)
def _match_table_nb(codes):
    n = codes.shape[0]
    M = np.zeros((n + 2, n + 1), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        ci = codes[i]
        for j in range(i + 1, n + 1):
            best = M[i + 1, j]
            for k in range(i + 1, j):
                if codes[k] == -ci:
                    v = 1 + M[i + 1, k] + M[k + 1, j]
                    if v > best:
                        best = v
            M[i, j] = best
    return M


def match_table_numba(codes):
    return _match_table_nb(np.ascontiguousarray(codes, dtype=np.int64))


@njit(cache=True)
def _max_matching_nb(codes):
    # O(n^2) memory like the table, but returns only the corner value.
    n = codes.shape[0]
    if n == 0:
        return 0
    M = np.zeros((n + 2, n + 1), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        ci = codes[i]
        for j in range(i + 1, n + 1):
            best = M[i + 1, j]
            for k in range(i + 1, j):
                if codes[k] == -ci:
                    v = 1 + M[i + 1, k] + M[k + 1, j]
                    if v > best:
                        best = v
            M[i, j] = best
    return M[0, n]


def max_matching_numba(codes):
    return int(_max_matching_nb(np.ascontiguousarray(codes, dtype=np.int64)))


def max_matching_numpy(codes):
    codes = np.asarray(codes, dtype=np.int64)
    n = codes.shape[0]
    if n == 0:
        return 0
    return int(match_table_numpy(codes)[0, n])


# ---------------------------------------------------------------------------
# Brute-force subset deletion: the independent oracle for the DP.
# Minimum number of deleted letters such that the kept subsequence freely
# reduces to the empty word.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _min_deletions_nb(codes):
    n = codes.shape[0]
    best = n
    stack = np.empty(n + 1, dtype=np.int64)
    for mask in range(1 << n):
        kept = 0
        m = mask
        while m:
            kept += m & 1
            m >>= 1
        if kept & 1:
            continue
        if n - kept >= best:
            continue
        top = 0
        for pos in range(n):
            if (mask >> pos) & 1:
                c = codes[pos]
                if top > 0 and stack[top - 1] == -c:
                    top -= 1
                else:
                    stack[top] = c
                    top += 1
        if top == 0:
            best = n - kept
    return best


def min_deletions_numba(codes):
    return int(_min_deletions_nb(np.ascontiguousarray(codes, dtype=np.int64)))


def min_deletions_numpy(codes):
    codes = np.asarray(codes, dtype=np.int64)
    n = codes.shape[0]
    if n == 0:
        return 0
    masks = np.arange(1 << n, dtype=np.int64)
    kept = np.zeros(masks.shape[0], dtype=np.int64)
    stack = np.zeros((masks.shape[0], n + 1), dtype=np.int64)
    top = np.zeros(masks.shape[0], dtype=np.int64)
    rows = np.arange(masks.shape[0])
    for pos in range(n):
        c = codes[pos]
        sel = ((masks >> pos) & 1).astype(bool)
        kept += sel
        prev = stack[rows, np.maximum(top - 1, 0)]
        cancel = sel & (top > 0) & (prev == -c)
        push = sel & ~cancel
        top[cancel] -= 1
        stack[rows[push], top[push]] = c
        top[push] += 1
    ok = top == 0
    return int(n - kept[ok].max())


# ---------------------------------------------------------------------------
# Signed sumset BFS on a window [-B, B] of Z.
#
# dist[x + B] is the least number of terms +-s (s in gens) summing to x, with
# every partial sum inside the window, or -1 if it exceeds max_layers.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _sumset_nb(gens, bound, max_layers):
    # push from a sparse frontier; once it is dense, let each unreached x pull
    # from x -+ s and stop at the first hit
    size = 2 * bound + 1
    dist = -np.ones(size, dtype=np.int64)
    dist[bound] = 0
    frontier = np.zeros(size, dtype=np.uint8)
    nxt = np.zeros(size, dtype=np.uint8)
    frontier[bound] = 1
    nf = 1
    ng = gens.shape[0]
    for layer in range(1, max_layers + 1):
        nxt[:] = 0
        nn = 0
        if nf * 16 < size:
            for x in range(size):
                if not frontier[x]:
                    continue
                for gi in range(ng):
                    s = gens[gi]
                    y = x + s
                    if y < size and dist[y] < 0:
                        dist[y] = layer
                        nxt[y] = 1
                        nn += 1
                    y = x - s
                    if y >= 0 and dist[y] < 0:
                        dist[y] = layer
                        nxt[y] = 1
                        nn += 1
        else:
            for x in range(size):
                if dist[x] >= 0:
                    continue
                for gi in range(ng):
                    s = gens[gi]
                    if (x >= s and frontier[x - s]) or (x + s < size and frontier[x + s]):
                        dist[x] = layer
                        nxt[x] = 1
                        nn += 1
                        break
        if nn == 0:
            break
        frontier, nxt = nxt, frontier
        nf = nn
    return dist


def signed_sumset_layers_numba(gens, bound, max_layers):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    return _sumset_nb(gens, int(bound), int(max_layers))


def signed_sumset_layers_numpy(gens, bound, max_layers):
    size = 2 * bound + 1
    dist = -np.ones(size, dtype=np.int64)
    dist[bound] = 0
    reached = np.zeros(size, dtype=bool)
    reached[bound] = True
    frontier = reached.copy()
    for layer in range(1, max_layers + 1):
        new = np.zeros(size, dtype=bool)
        for s in gens:
            s = int(s)
            if s >= size:
                continue
            new[s:] |= frontier[:-s]
            new[:-s] |= frontier[s:]
        new &= ~reached
        if not new.any():
            break
        dist[new] = layer
        reached |= new
        frontier = new
    return dist


if USE_NUMBA:
    match_table = match_table_numba
    max_matching = max_matching_numba
    min_deletions_bruteforce = min_deletions_numba
    signed_sumset_layers = signed_sumset_layers_numba
else:
    match_table = match_table_numpy
    max_matching = max_matching_numpy
    min_deletions_bruteforce = min_deletions_numpy
    signed_sumset_layers = signed_sumset_layers_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "match_table",
    "max_matching",
    "min_deletions_bruteforce",
    "signed_sumset_layers",
]
