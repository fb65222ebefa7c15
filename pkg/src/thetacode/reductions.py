"""Instance constructions: word instances, clique instances, finite exceptions."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .decode import enumerate_codes
from .encode import canonical_code, edge_structure
from .errors import BadParameters
from .language import FiniteLanguage, LanguageOracle
from .solver import NO, Decision, solve
from .structures import Alphabet, Graph, ThetaStructure


def word_instance(w: str, alphabet: Alphabet) -> ThetaStructure:
    """Canonical code of the edge structure of ``w``; it has ``2|w|`` elements."""
    return canonical_code(edge_structure(w, alphabet))


def clique_instance(G: Graph, n: int, alphabet: Alphabet) -> ThetaStructure:
    """Instance that carries a valid code iff ``G`` has an ``n``-clique.

    Vertices of ``G`` keep their ids and form ``P``; the ids ``|V|..|V|+n-1``
    form a directed ``n``-cycle labelled by every letter.
    """
    if n < 2:
        raise BadParameters(f"clique size must be at least 2, got {n}")
    c = [G.n + i for i in range(n)]
    cycle = [(c[i], c[(i + 1) % n]) for i in range(n)]
    S = [
        (u, v, c[i], c[j])
        for u, v in G.arcs()
        for i in range(n)
        for j in range(n)
        if i != j
    ]
    return ThetaStructure(
        G.n + n,
        alphabet,
        P=range(G.n),
        iota=[c[0]],
        tau=[c[-1]],
        H={s: cycle for s in alphabet},
        S=S,
    )


def clique_brute(G: Graph, n: int) -> bool:
    """Exhaustive subset search for ``n`` pairwise adjacent vertices."""
    if n < 1:
        raise BadParameters(f"clique size must be positive, got {n}")
    return any(
        all(G.adjacent(u, v) for u, v in combinations(subset, 2))
        for subset in combinations(range(G.n), n)
    )


def solve_with_exceptions(
    X: ThetaStructure, base: LanguageOracle, extra: Iterable[str]
) -> Decision:
    """Decide membership for the language ``base`` plus finitely many extra words.

    Runs the base decision first, then a separate code search per extra
    word, each bounded by that word's length.
    """
    decision = solve(X, base)
    if not decision.yes:
        return decision
    for w in sorted(set(extra), key=lambda w: (len(w), X.alphabet.word_key(w))):
        single = FiniteLanguage([w], X.alphabet)
        code = next(enumerate_codes(X, max(2, len(w)), single, limit=1), None)
        if code is not None:
            return Decision(NO, code)
    return decision
