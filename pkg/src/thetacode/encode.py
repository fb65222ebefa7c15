"""Edge structures and the canonical code of a word-signature structure."""

from __future__ import annotations

from .structures import Alphabet, RhoStructure, ThetaStructure


def edge_structure(w: str, alphabet: Alphabet) -> RhoStructure:
    """The ``|w|``-element structure whose only fact is ``R_w(0, ..., |w|-1)``."""
    alphabet.check_word(w, 2)
    return RhoStructure(len(w), alphabet, {w: {tuple(range(len(w)))}})


def code_elements(C: RhoStructure) -> list[tuple[str, tuple, int]]:
    """The fresh ``(word, tuple, position)`` labels, in the order they get ids.

    Positions are 0-based. The element with label ``k`` in this list has id
    ``C.n + k`` in ``canonical_code(C)``.
    """
    labels = []
    for w in C.words():
        for t in sorted(C.facts[w]):
            labels.extend((w, t, i) for i in range(len(w)))
    return labels


def canonical_code(C: RhoStructure) -> ThetaStructure:
    """Realize every fact ``R_w(t)`` of ``C`` by its own fresh valid ``w``-code.

    The code element for position ``i`` carries an ``H[w[i]]`` edge to the
    element for position ``i+1`` (cyclically), matching the valid-code
    conditions so that decoding recovers ``C``.
    """
    iota, tau, S = [], [], []
    H: dict[str, list] = {s: [] for s in C.alphabet}
    next_id = C.n
    for w in C.words():
        m = len(w)
        for t in sorted(C.facts[w]):
            c = list(range(next_id, next_id + m))
            next_id += m
            iota.append(c[0])
            tau.append(c[-1])
            for i in range(m):
                H[w[i]].append((c[i], c[(i + 1) % m]))
                for j in range(m):
                    if i != j:
                        S.append((t[i], t[j], c[i], c[j]))
    return ThetaStructure(next_id, C.alphabet, range(C.n), iota, tau, H, S)
