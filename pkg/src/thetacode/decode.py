"""Separatedness, valid-code enumeration and decoding of code-signature structures.

A valid ``w``-code in ``X`` is a pair of tuples ``a`` and ``c`` of length
``|w|`` such that

* every ``a[i]`` lies in ``P``;
* ``H[w[i]](c[i], c[i+1])`` holds, indices taken cyclically;
* ``iota(c[0])`` and ``tau(c[-1])`` hold;
* ``S(a[i], a[j], c[i], c[j])`` holds for all ``i != j``.

The enumerator walks labelled ``H``-paths from each ``iota`` element and
closes them at ``tau`` elements; the ``a`` side is then a binary constraint
problem over ``P`` that is narrowed while the path grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Iterator, Optional

from .language import LanguageOracle
from .structures import RhoStructure, ThetaStructure


@dataclass(frozen=True, order=True)
class ValidCode:
    word: str
    a: tuple[int, ...]
    c: tuple[int, ...]

    def __str__(self):
        return f"{self.word} a={','.join(map(str, self.a))} c={','.join(map(str, self.c))}"


@dataclass(frozen=True)
class SeparationViolation:
    kind: str  # H-touches-P, iota-in-P, tau-in-P, S-c-in-P, S-c-equal
    witness: tuple

    def __str__(self):
        return f"{self.kind} {' '.join(map(str, self.witness))}"


def is_separated(X: ThetaStructure) -> list[SeparationViolation]:
    """Every violation of separatedness, in a deterministic order; empty means separated."""
    P = X.P
    out = []
    for s in X.alphabet:
        for u, v in sorted(X.H[s]):
            if u in P or v in P:
                out.append(SeparationViolation("H-touches-P", (s, u, v)))
    out.extend(SeparationViolation("iota-in-P", (x,)) for x in sorted(X.iota & P))
    out.extend(SeparationViolation("tau-in-P", (x,)) for x in sorted(X.tau & P))
    for q in sorted(X.S):
        if q[2] in P or q[3] in P:
            out.append(SeparationViolation("S-c-in-P", q))
        if q[2] == q[3]:
            out.append(SeparationViolation("S-c-equal", q))
    return out


def verify_code(X: ThetaStructure, code: ValidCode) -> bool:
    """Check the four valid-code conditions directly on ``X``."""
    w, a, c = code.word, code.a, code.c
    m = len(w)
    if m < 1 or len(a) != m or len(c) != m:
        return False
    if any(x not in X.P for x in a):
        return False
    if any((c[i], c[(i + 1) % m]) not in X.H.get(w[i], ()) for i in range(m)):
        return False
    if c[0] not in X.iota or c[-1] not in X.tau:
        return False
    return all(
        (a[i], a[j], c[i], c[j]) in X.S for i in range(m) for j in range(m) if i != j
    )


class _Index:
    """Adjacency views of ``X`` used by the search."""

    def __init__(self, X: ThetaStructure):
        self.X = X
        self.P = X.P
        self.letters = list(X.alphabet)
        # succ[s][c]: sorted successors of c along H[s]
        self.succ: dict[str, dict[int, list[int]]] = {}
        for s in self.letters:
            table: dict[int, list[int]] = {}
            for u, v in X.H[s]:
                table.setdefault(u, []).append(v)
            for lst in table.values():
                lst.sort()
            self.succ[s] = table
        # pairs[(c, d)]: the (a, b) in P x P with S(a, b, c, d)
        self.pairs: dict[tuple[int, int], set[tuple[int, int]]] = {}
        for a, b, c, d in X.S:
            if a in self.P and b in self.P:
                self.pairs.setdefault((c, d), set()).add((a, b))


def _solve_a_side(
    domains: list[frozenset], allowed: dict[tuple[int, int], set[tuple[int, int]]]
) -> Iterator[tuple[int, ...]]:
    """Lexicographic enumeration of ``a``-tuples meeting all pairwise constraints.

    ``allowed[(j, i)]`` for ``j < i`` holds the admissible ``(a[j], a[i])``.
    """
    m = len(domains)
    assignment: list[int] = []

    def rec(i: int, live: list[frozenset]) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(assignment)
            return
        for v in sorted(live[i]):
            nxt = live[: i + 1]
            for k in range(i + 1, m):
                rel = allowed[(i, k)]
                dom = frozenset(x for x in live[k] if (v, x) in rel)
                if not dom:
                    break
                nxt.append(dom)
            else:
                assignment.append(v)
                yield from rec(i + 1, nxt)
                assignment.pop()

    yield from rec(0, list(domains))


def _walk(
    idx: _Index,
    max_len: int,
    oracle: Optional[LanguageOracle],
    roots: Iterable[int],
    first_a_only: bool,
) -> Iterator[ValidCode]:
    X = idx.X
    tau = X.tau
    P = idx.P
    letters = idx.letters
    pairs = idx.pairs
    path: list[int] = []
    word: list[str] = []

    def extend(domains: list[frozenset], allowed: dict) -> Iterator[ValidCode]:
        i = len(path) - 1
        ci = path[i]
        for s in letters:
            word.append(s)
            prefix = "".join(word)
            if oracle is not None and not oracle.may_extend(prefix, max_len):
                word.pop()
                continue
            if (
                i >= 1
                and ci in tau
                and path[0] in idx.succ[s].get(ci, ())
                and (oracle is None or oracle.contains(prefix))
            ):
                c = tuple(path)
                solutions = _solve_a_side(domains, allowed)
                if first_a_only:
                    solutions = islice(solutions, 1)
                for a in solutions:
                    yield ValidCode(prefix, a, c)
            if i + 1 < max_len:
                for d in idx.succ[s].get(ci, ()):
                    step = _add_position(d, domains, allowed)
                    if step is not None:
                        path.append(d)
                        yield from extend(*step)
                        path.pop()
            word.pop()

    def _add_position(d, domains, allowed):
        m = len(path)
        new_dom = set(P)
        links = {}
        for j, cj in enumerate(path):
            fwd = pairs.get((cj, d))
            back = pairs.get((d, cj))
            if not fwd or not back:
                return None
            rel = {(x, y) for x, y in fwd if (y, x) in back and x in domains[j]}
            if not rel:
                return None
            links[j] = rel
            new_dom &= {y for _, y in rel}
            if not new_dom:
                return None
        new_domains = []
        for j in range(m):
            dj = frozenset(x for x in domains[j] if any((x, y) in links[j] for y in new_dom))
            if not dj:
                return None
            new_domains.append(dj)
        new_domains.append(frozenset(new_dom))
        new_allowed = dict(allowed)
        for j, rel in links.items():
            new_allowed[(j, m)] = rel
        return new_domains, new_allowed

    for root in sorted(roots):
        if root not in X.iota:
            continue
        path.append(root)
        yield from extend([frozenset(P)], {})
        path.pop()


def default_max_len(X: ThetaStructure) -> int:
    return max(2, X.n - 1)


def enumerate_codes(
    X: ThetaStructure,
    max_len: Optional[int] = None,
    oracle: Optional[LanguageOracle] = None,
    limit: Optional[int] = None,
    roots: Optional[Iterable[int]] = None,
) -> Iterator[ValidCode]:
    """Yield valid codes with ``2 <= |word| <= max_len``.

    Codes come out ordered by their ``(c[0], w[0]), (c[1], w[1]), ...``
    sequence (letters in alphabet order), then by ``a``. With an oracle only
    codes whose word it contains are produced, and label prefixes the oracle
    cannot complete are cut off. ``roots`` restricts the start elements.
    """
    if max_len is None:
        max_len = default_max_len(X)
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    if limit is not None and limit <= 0:
        return
    idx = _Index(X)
    count = 0
    for code in _walk(idx, max_len, oracle, X.iota if roots is None else roots, False):
        yield code
        count += 1
        if limit is not None and count >= limit:
            return


def realized_words(
    X: ThetaStructure, max_len: Optional[int] = None, oracle: Optional[LanguageOracle] = None
) -> list[str]:
    """Words having at least one valid code, sorted in alphabet order."""
    if max_len is None:
        max_len = default_max_len(X)
    found = {code.word for code in _walk(_Index(X), max_len, oracle, X.iota, True)}
    return sorted(found, key=X.alphabet.word_key)


def decode(X: ThetaStructure, max_len: Optional[int] = None) -> RhoStructure:
    """The word-signature structure on ``P`` whose facts are the ``a``-tuples of valid codes."""
    renumber = {x: i for i, x in enumerate(sorted(X.P))}
    facts: dict[str, set] = {}
    for code in enumerate_codes(X, max_len):
        facts.setdefault(code.word, set()).add(tuple(renumber[x] for x in code.a))
    return RhoStructure(len(renumber), X.alphabet, facts)
