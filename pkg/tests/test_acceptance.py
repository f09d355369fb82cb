"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines, or execute this
file directly for a summary.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from bicoarse.audit import audit, f2_cancel, perturbed
from bicoarse.cancel import (cancellation_distance, cancellation_length, cancellation_length_oracle,
                             certificate)
from bicoarse.hsmap import (ReplacementRule, Wobble, decompose, replacement_apply, wobbling_apply)
from bicoarse.lab import almost_commuting_search, commutation_defect, distance_to_powers, u_word
from bicoarse.moves import move_distance
from bicoarse.qmorph import Brooks, Rolli, defect_on_ball, evaluate, homogenize
from bicoarse.words import Word, ball, commutator, invert, power, random_reduced, random_word
from bicoarse.zmetric import ZGenSet, profinite_witness, window_diameter, z_word_length
from bicoarse.zmetric import factorials

from oracles import minimal_factorization

SEED = 20240611


def _rng():
    return np.random.default_rng(SEED)


def _random_reduced_upto(rng, n_max, rank=2):
    return random_reduced(rng, int(rng.integers(0, n_max + 1)), rank)


def c1_golden_values():
    notes = []
    for text, want in [("abAAB", 3), ("abAABabAAB", 4)]:
        t0 = time.perf_counter()
        got = cancellation_length(Word(text))
        notes.append(got == want and time.perf_counter() - t0 < 1)
    t0 = time.perf_counter()
    notes.append(all(cancellation_length(Word("a" * n + "b" + "A" * n)) == 1 for n in range(1, 11)))
    a, b, one = Word("a"), Word("b"), Word("")
    notes.append(all(cancellation_distance(commutator(power(a, n), power(b, m)), one) == 2 * n
                     for n in range(1, 9) for m in range(n + 1, 9)))
    notes.append(all(cancellation_distance(commutator(power(a, n), power(b, n)), one) == 2 * n
                     for n in range(1, 9)))
    notes.append(time.perf_counter() - t0 < 1)
    return all(notes), f"{sum(notes)}/{len(notes)} golden groups exact, each under 1 s"


def c2_oracle_equivalence():
    t0 = time.perf_counter()
    rng = _rng()
    bad = [w for w in ball(2, 10) if cancellation_length(w) != cancellation_length_oracle(w)]
    randoms = [random_word(rng, int(rng.integers(0, 17))) for _ in range(10_000)]
    bad += [w for w in randoms if cancellation_length(w) != cancellation_length_oracle(w)]
    pairs = [(_random_reduced_upto(rng, 8), _random_reduced_upto(rng, 8)) for _ in range(1000)]
    bad_moves = [p for p in pairs if move_distance(*p) != cancellation_distance(*p)]
    dt = time.perf_counter() - t0
    return (not bad and not bad_moves and dt < 60,
            f"{len(bad)} DP/oracle mismatches, {len(bad_moves)} move mismatches, {dt:.1f} s")


def c3_certificates():
    rng = _rng()
    failures = 0
    for _ in range(10_000):
        w = random_word(rng, int(rng.integers(0, 25)))
        cert = certificate(w)
        if not cert.verify(w) or cert.length != cancellation_length(w):
            failures += 1
    return failures == 0, f"{failures} failures on 10^4 inputs"


def c4_metric_axioms():
    rng = _rng()
    violations = 0
    for _ in range(1000):
        x, y, z = (_random_reduced_upto(rng, 10) for _ in range(3))
        dxy = cancellation_distance(x, y)
        violations += dxy != cancellation_distance(y, x)
        violations += cancellation_distance(x, z) > dxy + cancellation_distance(y, z)
        violations += (dxy == 0) != (x == y)
        violations += cancellation_distance(x, x) != 0
        u, v, w1, w2 = (_random_reduced_upto(rng, 8) for _ in range(4))
        violations += cancellation_distance(u * w1 * v, u * w2 * v) != cancellation_distance(w1, w2)
    return violations == 0, f"{violations} violations"


def c5_factorial_lemma():
    t0 = time.perf_counter()
    got = {}
    for n in range(2, 7):
        nf = 1
        for i in range(2, n + 1):
            nf *= i
        got[n] = z_word_length(nf, factorials(n + 2, exclude=(nf,)), n + 1)
    dt = time.perf_counter() - t0
    return all(got[n] == n for n in got) and dt < 30, f"lengths {got}, {dt:.2f} s"


def c6_prime_window():
    t0 = time.perf_counter()
    ok, failures = window_diameter(ZGenSet.parse("primes"), 10_000, 4)
    dt = time.perf_counter() - t0
    return ok and dt < 60, f"{len(failures)} failures up to 10^4, {dt:.2f} s"


def c7_profinite():
    t0 = time.perf_counter()
    wit = profinite_witness([2, 3], 5, 4)
    dt = time.perf_counter() - t0
    congr = [c for c in wit.checks if c["check"] == "congruence"]
    vals = [c for c in wit.checks if c["check"].startswith("valuation")]
    ok = all(c["ok"] for c in wit.checks) and len(congr) == 6 and vals and dt < 5
    return ok, f"{len(wit.checks)} checks ({len(congr)} congruences), all ok={ok}, {dt:.2f} s"


def c8_quasimorphisms():
    rng = _rng()
    q = Brooks(Word("ab"))
    notes = [all(evaluate(q, power(Word("ab"), n)) == n for n in range(1, 51))]
    notes.append(homogenize(q, Word("ab"), 64)[0] == 1 and homogenize(q, Word("a"), 64)[0] == 0)
    rolli = Rolli.from_table({1: 1, 2: 5})
    anti = odd = 0
    for _ in range(1000):
        g = _random_reduced_upto(rng, 20)
        anti += q(invert(g)) != -q(g)
        odd += rolli(invert(g)) != -rolli(g)
    notes.append(anti == 0 and odd == 0)
    for f in (q, rolli):
        vals = [defect_on_ball(f, r).value for r in range(0, 4)]
        notes.append(vals == sorted(vals))
    return all(notes), f"{sum(notes)}/{len(notes)} sub-checks"


def c9_hs_maps():
    rng = _rng()
    rule = ReplacementRule(Word("aab"), Word("aBab"))
    wob = Wobble.from_mapping(Word("ab"), {1: 2, 2: 3, 3: 1})
    inv_bad = wob_bad = 0
    for _ in range(1000):
        g = _random_reduced_upto(rng, 30)
        inv_bad += replacement_apply(rule, replacement_apply(rule, g)) != g
        wob_bad += wobbling_apply(wob.inverse(), wobbling_apply(wob, g)) != g
    texts = {p.text for p in rule.pieces.pieces}
    dec_bad = 0
    for v in ball(2, 10)[1::37]:
        parts = [u.text for u in decompose(v, rule.pieces)]
        dec_bad += "".join(parts) != v.text or parts != minimal_factorization(v.text, texts)
    ok = inv_bad == wob_bad == dec_bad == 0
    return ok, f"involution {inv_bad}, wobble inverse {wob_bad}, decomposition {dec_bad} failures"


def c10_strip_probes():
    bad = 0
    for n in (1, 2, 3):
        u = u_word(n)
        for k in range(1, 5):
            W = power(Word("a") * u, k)
            bad += commutation_defect(u, power(u, k)) != 0
            bad += commutation_defect(u, W) != 2
            bad += distance_to_powers(W, u, 2 * k) != (k, k)
        cap = 8
        hits = [h.word for h in almost_commuting_search(u, 0, cap)]
        want = sorted((power(u, k) for k in range(-cap, cap + 1) if abs(k) * len(u) <= cap), key=Word.sort_key)
        bad += hits != want
    return bad == 0, f"{bad} failing probes"


def c11_finite_index():
    a, b = Word("a"), Word("ab")
    first = all(cancellation_length(a * power(b, n) * a * power(b, -n)) == 2 for n in range(1, 11))
    x, y, z = Word("a", 3), Word("b", 3), Word("c", 3)
    second = all(cancellation_length(x * power(z, n) * power(y, -n)) == 2 * n + 1 for n in range(1, 9))
    return first and second, f"bounded family ok={first}, growing family ok={second}"


def c12_audit_sanity():
    m = f2_cancel(3)
    rep = audit(m, [0, 1, 2, 3])
    group = rep.assoc.value == rep.unit.value == rep.inverse.value == 0
    rho = [rep.rho(r) for r in range(4)] == [0, 1, 2, 3]
    abelian = rep.abelian.value == 2 and rep.abelian.witness == ("a", "b")
    unit = audit(perturbed(5), [1]).unit.value == 1
    detail = (f"group clauses zero={group}, rho(r)=r {rho}, "
              f"abelian={rep.abelian.value} at {tuple(m.show(x) for x in rep.abelian.witness)} "
              f"(wanted 2 at (a, b)), perturbed unit defect 1={unit}")
    return group and rho and abelian and unit, detail


CRITERIA = [
    ("1 golden values", c1_golden_values),
    ("2 oracle equivalence", c2_oracle_equivalence),
    ("3 certificate soundness", c3_certificates),
    ("4 metric axioms and bi-invariance", c4_metric_axioms),
    ("5 factorial lemma", c5_factorial_lemma),
    ("6 prime window", c6_prime_window),
    ("7 profinite witness", c7_profinite),
    ("8 quasimorphism suite", c8_quasimorphisms),
    ("9 HS suite", c9_hs_maps),
    ("10 strip probes", c10_strip_probes),
    ("11 finite-index contrast", c11_finite_index),
    ("12 audit sanity", c12_audit_sanity),
]


@pytest.mark.parametrize("name,check", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, check):
    ok, detail = check()
    print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    results = []
    for name, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    print(f"{sum(results)}/{len(results)} criteria pass")
