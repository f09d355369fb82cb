from fractions import Fraction

import pytest
from hypothesis import given

from bicoarse.cancel import cancellation_distance
from bicoarse.errors import BicoarseError
from bicoarse.lab import (Slope, almost_commuting_search, commutation_defect, distance_to_powers, in_strip,
                          phi, u_word)
from bicoarse.moves import move_distance
from bicoarse.words import Word, power, reduce

from conftest import words

BETA = Slope(Fraction(8, 5))


def test_u_words():
    assert u_word(1, BETA) == Word("ab")
    assert u_word(5, BETA) == Word("a" * 8 + "b" * 5)
    assert u_word(2, Slope.parse("3/2")) == Word("aaabb")
    with pytest.raises(BicoarseError):
        Slope(Fraction(1))
    with pytest.raises(BicoarseError):
        u_word(0)


def test_strip():
    for n in range(1, 30):
        u = u_word(n, BETA)
        assert phi(u, BETA) == n * BETA.beta - (n * 8) // 5
        assert in_strip(u, BETA)
    assert phi(Word(""), BETA) == 0 and in_strip(Word(""), BETA)
    assert phi(Word("a"), BETA) == -1 and not in_strip(Word("a"), BETA)


@given(words(max_size=10), words(max_size=10))
def test_phi_homomorphism_and_lipschitz(g, h):
    assert phi(g * h, BETA) == phi(g, BETA) + phi(h, BETA)
    assert abs(phi(g, BETA) - phi(h, BETA)) <= BETA.beta * cancellation_distance(g, h)


def test_commutation_probes():
    for n in (1, 2, 3):
        u = u_word(n, BETA)
        for k in range(1, 5):
            assert commutation_defect(u, power(u, k)) == 0
            W = power(Word("a") * u, k)
            assert commutation_defect(u, W) == 2
            assert distance_to_powers(W, u, 2 * k) == (k, k)
    assert commutation_defect(u_word(2, Slope.parse("3/2")), Word("b")) == 2


def test_distance_to_powers_examples():
    u = u_word(2, BETA)
    assert distance_to_powers(power(u, 3), u, 5) == (3, 0)
    assert distance_to_powers(Word(""), u, 5) == (0, 0)
    assert distance_to_powers(power(u, -2), u, 5) == (-2, 0)


@given(words(max_size=6))
def test_defect_agrees_with_move_distance(W):
    u = u_word(1, BETA)
    x, y = reduce(u + W), reduce(W + u)
    assert commutation_defect(u, W) == move_distance(x, y)


@pytest.mark.parametrize("n,cap", [(1, 8), (2, 10), (3, 8)])
def test_zero_defect_search_finds_powers(n, cap):
    u = u_word(n, BETA)
    hits = almost_commuting_search(u, 0, cap)
    expected = sorted((power(u, k) for k in range(-cap, cap + 1) if len(u) * abs(k) <= cap),
                      key=Word.sort_key)
    assert [h.word for h in hits] == expected
    assert all(h.power_distance == 0 for h in hits)


def test_search_with_defect_two_contains_shifted_powers():
    u = u_word(1, BETA)
    hits = {h.word for h in almost_commuting_search(u, 2, 6)}
    for k in (1, 2):
        assert power(Word("a") * u, k) in hits


def test_search_edge_cases():
    assert [h.word for h in almost_commuting_search(u_word(1), 3, 0)] == [Word("")]
    u = u_word(2, BETA)
    narrow = almost_commuting_search(u, 0, 14, beam_width=64)
    assert all(commutation_defect(u, h.word) == 0 for h in narrow)
    wide = almost_commuting_search(u, 0, 14, beam_width=512)
    assert [h.word.text for h in wide] == ["", "aaabb", "BBAAA", "aaabbaaabb", "BBAAABBAAA"]
    assert {h.word for h in narrow} <= {h.word for h in wide}
