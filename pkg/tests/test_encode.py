import pytest

from oracles import AB, naive_codes
from thetacode.decode import ValidCode, decode, is_separated, verify_code
from thetacode.encode import canonical_code, code_elements, edge_structure
from thetacode.errors import LetterNotInAlphabet, WordTooShort
from thetacode.structures import Alphabet, RhoStructure, ThetaStructure
from thetacode.toolkit import random_rho


def test_edge_structure_ab():
    F = edge_structure("ab", AB)
    assert F.n == 2
    assert F.facts == {"ab": {(0, 1)}}


def test_edge_structure_aaa():
    F = edge_structure("aaa", Alphabet("a"))
    assert F.n == 3 and F.facts == {"aaa": {(0, 1, 2)}}


def test_edge_structure_errors():
    with pytest.raises(WordTooShort):
        edge_structure("a", AB)
    with pytest.raises(LetterNotInAlphabet):
        edge_structure("ac", AB)


def test_canonical_code_of_f_ab_by_hand():
    expected = ThetaStructure(
        4,
        AB,
        P={0, 1},
        iota={2},
        tau={3},
        H={"a": {(2, 3)}, "b": {(3, 2)}},
        S={(0, 1, 2, 3), (1, 0, 3, 2)},
    )
    X = canonical_code(edge_structure("ab", AB))
    assert X == expected
    # the hand-built structure decodes back to the edge structure
    assert decode(expected, 3) == edge_structure("ab", AB)


def test_canonical_code_without_facts():
    C = RhoStructure(3, AB)
    X = canonical_code(C)
    assert X == ThetaStructure(3, AB, P={0, 1, 2})


@pytest.mark.parametrize("w", ["ab", "ba", "aaa", "abab", "bbbab"])
def test_edge_code_has_twice_the_word_length(w):
    assert canonical_code(edge_structure(w, AB)).n == 2 * len(w)


def test_fresh_ids_follow_sorted_labels():
    C = RhoStructure(2, AB, {"ba": {(1, 0)}, "ab": {(1, 1), (0, 1)}})
    labels = code_elements(C)
    assert labels[:2] == [("ab", (0, 1), 0), ("ab", (0, 1), 1)]
    assert labels[2:4] == [("ab", (1, 1), 0), ("ab", (1, 1), 1)]
    assert labels[4:] == [("ba", (1, 0), 0), ("ba", (1, 0), 1)]
    X = canonical_code(C)
    assert X.iota == {2, 4, 6} and X.tau == {3, 5, 7}


def test_canonical_code_is_separated_and_decodes_back():
    for seed in range(200):
        C = random_rho(seed % 6 + 1, AB, 4, seed % 6, seed)
        X = canonical_code(C)
        assert is_separated(X) == []
        assert decode(X, max(2, C.max_word_len())) == C


def test_every_fact_gives_a_valid_code():
    for seed in range(50):
        C = random_rho(seed % 5 + 1, AB, 4, 3, seed)
        X = canonical_code(C)
        labels = code_elements(C)
        start = {}
        for k, (w, t, i) in enumerate(labels):
            start.setdefault((w, t), C.n + k)
        for (w, t), first in start.items():
            code = ValidCode(w, t, tuple(range(first, first + len(w))))
            assert verify_code(X, code)


def test_codes_of_small_canonical_codes_match_brute_force():
    # only the planted codes exist
    C = RhoStructure(2, AB, {"ab": {(0, 1)}, "ba": {(0, 0)}})
    X = canonical_code(C)
    assert naive_codes(X, 3) == {
        ValidCode("ab", (0, 1), (2, 3)),
        ValidCode("ba", (0, 0), (4, 5)),
    }
