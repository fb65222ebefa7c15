from itertools import combinations

import pytest

from oracles import AB, all_words, random_with_codes
from thetacode.decode import is_separated
from thetacode.encode import canonical_code, edge_structure
from thetacode.errors import BadParameters, WordTooShort
from thetacode.language import AllWords, FiniteLanguage, NoWords
from thetacode.reductions import (
    clique_brute,
    clique_instance,
    solve_with_exceptions,
    word_instance,
)
from thetacode.rng import XorShift64Star
from thetacode.solver import hom_search, solve
from thetacode.structures import Alphabet, Graph

A1 = Alphabet("a")


def complete(n):
    return Graph(n, frozenset(combinations(range(n), 2)))


def path(n):
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def test_word_instance_is_the_edge_code():
    assert word_instance("ab", AB) == canonical_code(edge_structure("ab", AB))
    for w in all_words(AB, 2, 4):
        assert word_instance(w, AB).n == 2 * len(w)
    with pytest.raises(WordTooShort):
        word_instance("b", AB)


def test_word_instances_are_pairwise_non_homomorphic():
    for u in all_words(AB, 2, 3):
        for w in all_words(AB, 2, 3):
            both = (
                hom_search(word_instance(u, AB), word_instance(w, AB)) is not None
                and hom_search(word_instance(w, AB), word_instance(u, AB)) is not None
            )
            assert both == (u == w)


def test_clique_brute_examples():
    assert clique_brute(complete(4), 3)
    assert not clique_brute(path(3), 3)
    assert clique_brute(path(1), 1)
    assert not clique_brute(Graph(0), 1)


def test_clique_instance_shape():
    X = clique_instance(complete(3), 3, A1)
    assert X.n == 6
    assert X.P == {0, 1, 2} and X.iota == {3} and X.tau == {5}
    assert X.H["a"] == {(3, 4), (4, 5), (5, 3)}
    assert len(X.S) == 6 * 6
    assert is_separated(X) == []
    with pytest.raises(BadParameters):
        clique_instance(complete(3), 1, A1)


def test_triangle_is_found_and_path_is_not():
    assert not solve(clique_instance(complete(3), 3, A1), AllWords(A1)).yes
    assert solve(clique_instance(path(3), 3, A1), AllWords(A1)).yes


def test_two_cliques_are_edges():
    for seed in range(30):
        rng = XorShift64Star(seed)
        n = rng.randint(0, 6)
        G = Graph(n, frozenset((u, v) for u, v in combinations(range(n), 2) if rng.chance(0.3)))
        d = solve(clique_instance(G, 2, A1), AllWords(A1))
        assert (not d.yes) == bool(G.edges)


def test_clique_equivalence_all_graphs_on_four_vertices():
    pairs = list(combinations(range(4), 2))
    for mask in range(1 << len(pairs)):
        G = Graph(4, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        for n in (2, 3, 4):
            d = solve(clique_instance(G, n, AB), AllWords(AB))
            assert (not d.yes) == clique_brute(G, n)


def test_exceptions_with_empty_extra_match_solve():
    for seed in range(60):
        X = random_with_codes(seed)
        for base in (NoWords(AB), FiniteLanguage(["ab", "aab"], AB)):
            assert solve_with_exceptions(X, base, []) == solve(X, base)


def test_exceptions_match_finite_language():
    for seed in range(200):
        X = random_with_codes(seed)
        got = solve_with_exceptions(X, NoWords(AB), {"ab"})
        assert got.yes == solve(X, FiniteLanguage(["ab"], AB)).yes
    assert not solve_with_exceptions(word_instance("ab", AB), NoWords(AB), {"ab"}).yes


def test_exceptions_match_union():
    words = all_words(AB, 2, 4)
    for seed in range(150):
        rng = XorShift64Star(seed)
        X = random_with_codes(seed)
        V = rng.sample(words, 4)
        E = rng.sample(words, 3)
        got = solve_with_exceptions(X, FiniteLanguage(V, AB), E)
        assert got.yes == solve(X, FiniteLanguage(set(V) | set(E), AB)).yes
