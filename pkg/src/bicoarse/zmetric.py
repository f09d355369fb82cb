"""Word metrics on Z from sparse generating sets, and pro-Q witness sequences.

All generating sets are finite truncations (an explicit list, factorials up to
``N!``, powers up to ``a^e``, primes up to a limit); lengths are exact with
respect to the truncated set.
"""
from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass, field
from math import factorial

import numpy as np
from sympy import isprime, multiplicity, primerange

from . import kernels
from .errors import BicoarseError, InfeasibleN, NonPrimeInput, QContainsQ


@dataclass(frozen=True)
class ZGenSet:
    """A finite generating family of Z; ``kind`` is explicit/factorials/powers/primes."""

    kind: str
    params: tuple = ()
    exclude: frozenset = field(default_factory=frozenset)

    def members(self) -> list[int]:
        if self.kind == "explicit":
            base = self.params
        elif self.kind == "factorials":
            base = [factorial(n) for n in range(1, self.params[0] + 1)]
        elif self.kind == "powers":
            a, max_exp = self.params
            base = [a ** e for e in range(max_exp + 1)]
        elif self.kind == "primes":
            if not self.params:
                raise BicoarseError("primes need a limit here (primes:LIMIT)")
            base = list(primerange(2, self.params[0] + 1))
        else:
            raise BicoarseError(f"unknown generating set kind {self.kind!r}")
        out = sorted({abs(int(s)) for s in base} - set(self.exclude) - {0})
        return out

    def describe(self) -> str:
        body = ",".join(str(p) for p in self.params)
        out = f"{self.kind}:{body}"
        if self.exclude:
            out += " minus {" + ",".join(map(str, sorted(self.exclude))) + "}"
        return out

    @classmethod
    def parse(cls, text: str, exclude=()) -> "ZGenSet":
        """``factorials:N`` | ``powers:A:E`` | ``primes:LIMIT`` | ``explicit:1,2,5`` | ``1,2,5``."""
        kind, _, rest = text.partition(":")
        if not rest and re.fullmatch(r"[\d, ]+", kind):
            kind, rest = "explicit", kind
        kind = kind.strip().lower()
        try:
            if kind == "explicit":
                params = tuple(int(x) for x in rest.split(",") if x.strip())
            elif kind == "factorials":
                params = (int(rest),)
            elif kind == "powers":
                a, e = rest.split(":")
                params = (int(a), int(e))
            elif kind == "primes":
                params = (int(rest),) if rest.strip() else ()
            else:
                raise BicoarseError(f"unknown generating set kind {kind!r}")
        except ValueError as exc:
            raise BicoarseError(f"cannot parse generating set {text!r}: {exc}") from None
        return cls(kind, params, frozenset(int(x) for x in exclude))


def factorials(max_n: int, exclude=()) -> ZGenSet:
    return ZGenSet("factorials", (max_n,), frozenset(exclude))


def primes(limit: int) -> ZGenSet:
    return ZGenSet("primes", (limit,))


def powers_of(a: int, max_exp: int) -> ZGenSet:
    return ZGenSet("powers", (a, max_exp))


def explicit(values, exclude=()) -> ZGenSet:
    return ZGenSet("explicit", tuple(values), frozenset(exclude))


def _gens(S) -> list[int]:
    return S.members() if isinstance(S, ZGenSet) else sorted({abs(int(s)) for s in S} - {0})


def z_word_length(k: int, S, cap: int) -> int | None:
    """Least ``m`` with ``k = +-s_1 +- ... +- s_m``, or ``None`` if it exceeds ``cap``.

    Iterative deepening over multisets of signed generators (taken in
    nonincreasing order of size), pruned by ``|rest| <= budget * largest_allowed``.
    """
    k = abs(k)
    if k == 0:
        return 0
    gens = sorted(_gens(S), reverse=True)
    if not gens:
        return None
    members = set(gens)

    def search(rest, budget, start):
        # rest must be written with `budget` terms of size <= gens[start]
        if budget == 1:
            return abs(rest) in members and abs(rest) <= gens[start]
        for i in range(start, len(gens)):
            s = gens[i]
            if abs(rest) > budget * s:
                return False
            if search(rest - s, budget - 1, i) or search(rest + s, budget - 1, i):
                return True
        return False

    for m in range(1, cap + 1):
        if search(k, m, 0):
            return m
    return None


def factorial_length_check(n: int) -> dict:
    """Length of ``n!`` over ``{j! : j <= n+2, j != n}`` with cap ``n+1``; the claim is ``n``."""
    if not 2 <= n <= 7:
        raise InfeasibleN(f"n must lie in [2, 7], got {n}")
    target = factorial(n)
    S = factorials(n + 2, exclude=(target,))
    value = z_word_length(target, S, n + 1)
    return {"n": n, "element": target, "generators": S.members(), "cap": n + 1,
            "length": value, "expected": n, "ok": value == n}


def window_lengths(S, N: int, m: int) -> np.ndarray:
    """``out[k] = |k|_S`` for ``0 <= k <= N`` when at most ``m``, else -1.

    Breadth-first layers of signed sums confined to ``[-B, B]`` with
    ``B = N + max(S)``: any representation of ``|k| <= N`` can be reordered
    to keep its partial sums inside that window.
    """
    if isinstance(S, ZGenSet) and S.kind == "primes" and not S.params:
        # truncating only lengthens words, so a passing check stays valid for all primes
        S = ZGenSet("primes", (2 * N + 2,), S.exclude)
    gens = np.array(_gens(S), dtype=np.int64)
    if gens.size == 0:
        out = -np.ones(N + 1, dtype=np.int64)
        out[0] = 0
        return out
    bound = N + int(gens.max())
    dist = kernels.signed_sumset_layers(gens, bound, m)
    return dist[bound: bound + N + 1]


def window_diameter(S, N: int, m: int) -> tuple[bool, list[int]]:
    """Check ``|k|_S <= m`` for every ``1 <= k <= N``; returns ``(ok, failures)``."""
    lengths = window_lengths(S, N, m)
    failures = [int(k) for k in np.nonzero(lengths[1:] < 0)[0] + 1]
    return not failures, failures


# ---------------------------------------------------------------------------
# pro-Q witness
# ---------------------------------------------------------------------------


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    return int(multiplicity(p, n))


def _order_mod_prime(x: int, q: int) -> int:
    x %= q
    d, y = 1, x
    while y != 1:
        y = y * x % q
        d += 1
    return d


def multiplicative_order_prime_power(x: int, q: int, l: int) -> int:
    """Order of ``x`` in ``(Z / q^l)^*`` for a prime ``q`` not dividing ``x``.

    Lifts the order mod ``q`` using ``v_q(x^(d q^j) - 1) = v_q(x^d - 1) + j``
    (valid for odd ``q``; ``q = 2`` is handled through ``x^2``).
    """
    if x % q == 0:
        raise ValueError(f"{x} is not a unit modulo {q}")
    if l <= 0 or x % q ** l == 1:
        return 1
    if q == 2:
        if l == 1:
            return 1
        if x % 4 == 1:
            return 2 ** max(0, l - valuation(x - 1, 2))
        return 2 ** max(1, l - valuation(x * x - 1, 2) + 1)
    d = _order_mod_prime(x, q)
    t = valuation(pow(x, d) - 1, q)
    return d * q ** max(0, l - t)


def _least_exponent(k: int, q: int) -> int:
    """Least ``l >= 1`` with ``k <= q^l``."""
    l = max(1, int((k.bit_length() - 1) * math.log(2) / math.log(q)) - 2)
    base = q ** l
    while base < k:
        base *= q
        l += 1
    while l > 1 and base // q >= k:
        base //= q
        l -= 1
    return l


@dataclass
class ProfiniteWitness:
    """``k_n = k_{n-1} P_n^{a_n}`` kept in factored form.

    ``exponents[n]`` maps each prime to its exponent in ``k_{n+1}``;
    ``moduli[j]`` is ``l_{j+1}`` with ``k_{j+1} <= q^{l_{j+1}}``.
    """

    Q: tuple
    q: int
    products: list
    orders: list
    exponents: list
    moduli: list
    checks: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.exponents)

    def value(self, n: int, max_bits: int = 1 << 22) -> int | None:
        """``k_n`` (1-based) as an integer, or ``None`` when it exceeds ``max_bits``."""
        factors = self.exponents[n - 1]
        bits = sum(e * p.bit_length() for p, e in factors.items())
        if bits > max_bits:
            return None
        return math.prod(p ** e for p, e in factors.items())

    def to_json(self) -> dict:
        # exponents can run to tens of thousands of digits
        limit = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return self._to_json()
        finally:
            sys.set_int_max_str_digits(limit)

    def _to_json(self) -> dict:
        ks = []
        for n in range(1, self.steps + 1):
            v = self.value(n, max_bits=1 << 18)
            ks.append({"n": n,
                       "factors": {str(p): str(e) for p, e in self.exponents[n - 1].items()},
                       "value": None if v is None else str(v)})
        return {"Q": list(self.Q), "q": self.q,
                "products": [str(p) for p in self.products],
                "orders": [str(a) for a in self.orders],
                "moduli": [str(l) for l in self.moduli],
                "k": ks,
                "checks": self.checks}


def profinite_witness(Q, q: int, steps: int) -> ProfiniteWitness:
    """Sequence converging to 0 in the pro-Q topology but to a non-integer in Z_q.

    Primes of ``Q`` are taken in increasing order; once they are used up the
    full product ``p_1 ... p_|Q|`` repeats.
    """
    Q = tuple(sorted(set(int(p) for p in Q)))
    if not Q or steps < 1:
        raise BicoarseError("need a nonempty Q and steps >= 1")
    for p in Q + (q,):
        if not isprime(p):
            raise NonPrimeInput(f"{p} is not prime")
    if q in Q:
        raise QContainsQ(f"q = {q} lies in Q")
    products, orders, exponents, moduli = [], [], [], []
    factors: dict = {}
    k_prev = None
    for n in range(1, steps + 1):
        used = Q[: min(n, len(Q))]
        P = math.prod(used)
        l = 1 if n == 1 else moduli[-1]
        a = multiplicative_order_prime_power(P, q, l)
        for p in used:
            factors[p] = factors.get(p, 0) + a
        products.append(P)
        orders.append(a)
        exponents.append(dict(factors))
        if n < steps:
            k_prev = math.prod(p ** e for p, e in factors.items())
            moduli.append(_least_exponent(k_prev, q))
    wit = ProfiniteWitness(Q, q, products, orders, exponents, moduli)
    wit.checks = verify_witness(wit)
    failed = [c for c in wit.checks if not c["ok"]]
    if failed:
        raise BicoarseError(f"witness failed its own checks: {failed[:3]}")
    return wit


# Budget for a direct pow(): exponent bits * modulus bits.
DIRECT_POW_BUDGET = 10 ** 8


def _residue(factors: dict, q: int, l: int, budget: int = DIRECT_POW_BUDGET):
    """``k mod q^l`` from its factorization, or ``None`` if too expensive."""
    mod = q ** l
    phi = mod - mod // q
    out = 1
    for p, e in factors.items():
        e_red = e % phi
        if e_red.bit_length() * mod.bit_length() > budget:
            return None
        out = out * pow(p, e_red, mod) % mod
    return out


def _link_valuation(P: int, a: int, q: int) -> int:
    """``v_q(P^a - 1)`` without forming ``P^a``; requires ``ord_q(P) | a``."""
    if q == 2:
        if a % 2 == 1:
            return valuation(P - 1, 2)
        return valuation(P * P - 1, 2) + valuation(a, 2) - 1
    d = _order_mod_prime(P, q)
    if a % d:
        return 0
    return valuation(pow(P, d) - 1, q) + valuation(a // d, q)


def verify_witness(wit: ProfiniteWitness, budget: int = DIRECT_POW_BUDGET) -> list[dict]:
    """Re-check every invariant from the stored factorizations alone.

    Congruences ``k_n = k_j (mod q^{l_j})`` are checked by modular
    exponentiation when affordable; otherwise each link ``P_i^{a_i} = 1
    (mod q^{l_{i-1}})`` is checked through its q-adic valuation and the
    congruence follows by transitivity.
    """
    checks = []
    q, m = wit.q, wit.steps
    ks = [wit.value(n) for n in range(1, m + 1)]
    for n in range(1, m + 1):
        k = ks[n - 1]
        for p, e in wit.exponents[n - 1].items():
            if k is None:
                checks.append({"check": "valuation", "n": n, "p": p, "ok": e > 0, "method": "factored"})
                continue
            ok = k % p ** e == 0 and k % p ** (e + 1) != 0
            checks.append({"check": "valuation", "n": n, "p": p, "ok": ok, "method": "divide"})
        if n >= 2:
            prev = wit.exponents[n - 2]
            grow = all(wit.exponents[n - 1].get(p, 0) > prev.get(p, 0) for p in prev)
            checks.append({"check": "valuation_growth", "n": n, "ok": grow, "method": "factored"})
    for j in range(1, m):
        l = wit.moduli[j - 1]
        kj = ks[j - 1]
        checks.append({"check": "modulus_bound", "j": j, "l": l,
                       "ok": kj is not None and kj <= q ** l and kj % q != 0, "method": "direct"})
        ref = kj % q ** l
        for n in range(j + 1, m + 1):
            res = _residue(wit.exponents[n - 1], q, l, budget)
            if res is not None:
                checks.append({"check": "congruence", "n": n, "j": j, "ok": res == ref,
                               "method": "pow"})
                continue
            links = [_link_valuation(wit.products[i - 1], wit.orders[i - 1], q) >= l
                     for i in range(j + 1, n + 1)]
            checks.append({"check": "congruence", "n": n, "j": j, "ok": all(links),
                           "method": "valuation"})
        # distinct residues for k_1..k_j modulo q^{l_j}: the limit is not an integer
        seen = [ks[i] % q ** l for i in range(j) if ks[i] is not None]
        checks.append({"check": "not_eventually_constant", "j": j,
                       "ok": len(set(seen)) == len(seen) == j, "method": "direct"})
    return checks


__all__ = [
    "ProfiniteWitness",
    "ZGenSet",
    "explicit",
    "factorial_length_check",
    "factorials",
    "multiplicative_order_prime_power",
    "powers_of",
    "primes",
    "profinite_witness",
    "valuation",
    "verify_witness",
    "window_diameter",
    "window_lengths",
    "z_word_length",
]
