import pytest
from hypothesis import given

from bicoarse.cancel import cancellation_distance
from bicoarse.errors import Unreached
from bicoarse.moves import Move, MoveSequence, cancellation_neighbors, geodesic_moves, move_distance
from bicoarse.words import Word, ball, random_reduced

from conftest import words
from oracles import move_graph_distance


def test_neighbors():
    assert {w.text for w in cancellation_neighbors(Word("abAB"))} == {"B", "a", "abA", "bAB"}
    assert cancellation_neighbors(Word("")) == set()


def test_moves_apply():
    assert Move("Cancellation", index=1).apply(Word("abA")) == Word("")
    assert Move("Addition", split=1, conjugator="b", letter="a").apply(Word("aa")) == Word("abaBa")
    with pytest.raises(ValueError):
        Move("Addition", split=0, conjugator="", letter="A").apply(Word("ab"))


def test_geodesic_examples():
    seq = geodesic_moves(Word("abAAB"), Word(""))
    assert len(seq) == 3
    assert all(m.kind == "Cancellation" for m in seq.moves)
    assert seq.end == Word("")
    seq = geodesic_moves(Word("ab"), Word("ba"))
    assert [m.kind for m in seq.moves] == ["Cancellation", "Addition"]
    assert seq.to_json() == {"start": "ab", "end": "ba", "moves": [
        {"kind": "Cancellation", "index": 1},
        {"kind": "Addition", "split": 0, "conjugator": "1", "letter": "b"}]}


def test_unreached():
    assert move_distance(Word("aaaa"), Word(""), cap=3) is None
    with pytest.raises(Unreached):
        geodesic_moves(Word("aaaa"), Word(""), cap=3)
    assert move_distance(Word("aaaa"), Word(""), cap=4) == 4


@given(words(max_size=7), words(max_size=7))
def test_distance_equals_cancellation_metric(x, y):
    assert move_distance(x, y) == cancellation_distance(x, y)


@given(words(max_size=6), words(max_size=6))
def test_geodesic_replays_in_normal_form(x, y):
    seq = geodesic_moves(x, y)
    chain = seq.replay()
    assert chain[0] == x and chain[-1] == y
    assert all(w.is_reduced for w in chain)
    assert len(seq) == cancellation_distance(x, y)
    assert seq.is_normal_form


def test_unrestricted_move_graph_agrees(rng):
    # BFS over all moves inside a ball never beats the cancellations-first search
    B = ball(2, 4)
    for _ in range(60):
        x = B[rng.integers(len(B))]
        y = B[rng.integers(len(B))]
        assert move_graph_distance(x, y, radius=5) == move_distance(x, y)


def test_moves_between_random_long_words(rng):
    for _ in range(20):
        x, y = random_reduced(rng, 9), random_reduced(rng, 9)
        assert move_distance(x, y) == cancellation_distance(x, y)


def test_normal_form_flag():
    seq = MoveSequence(Word("a"), (Move("Addition", split=0, conjugator="", letter="b"),
                                   Move("Cancellation", index=0)))
    assert not seq.is_normal_form
    assert seq.end == Word("a")
