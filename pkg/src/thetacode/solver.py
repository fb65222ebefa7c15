"""Homomorphism search and the decision procedure for encoded trivial templates.

A code-signature structure ``X`` maps homomorphically into the encoding of
the trivial structure for a language ``W`` exactly when ``X`` is separated
and carries no valid ``w``-code with ``w`` in ``W``. In a separated
structure every valid code uses ``|w|`` distinct non-``P`` elements plus at
least one ``P`` element, so codes longer than ``|X| - 1`` never need to be
searched.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from .decode import (
    SeparationViolation,
    ValidCode,
    default_max_len,
    enumerate_codes,
    is_separated,
)
from .errors import SignatureMismatch
from .language import LanguageOracle
from .structures import RhoStructure, ThetaStructure

Structure = Union[ThetaStructure, RhoStructure]

YES = "YES"
NO = "NO"


@dataclass(frozen=True)
class Decision:
    answer: str
    witness: Optional[Union[ValidCode, SeparationViolation]] = None

    def __post_init__(self):
        if self.answer not in (YES, NO):
            raise ValueError(f"bad answer {self.answer!r}")
        if (self.answer == NO) != (self.witness is not None):
            raise ValueError("NO needs a witness and YES must not carry one")

    @property
    def yes(self) -> bool:
        return self.answer == YES

    def __str__(self):
        if self.yes:
            return YES
        if isinstance(self.witness, ValidCode):
            w = self.witness
            a = ",".join(map(str, w.a))
            c = ",".join(map(str, w.c))
            return f"NO valid-code word={w.word} a={a} c={c}"
        return f"NO not-separated {self.witness}"


@dataclass(frozen=True)
class Homomorphism:
    map: tuple[int, ...]
    injective: bool


def _check_signatures(A: Structure, B: Structure) -> None:
    if A.signature_key() != B.signature_key():
        raise SignatureMismatch(f"{A.signature_key()} vs {B.signature_key()}")


def hom_search(
    A: Structure,
    B: Structure,
    injective: bool = False,
    embedding: bool = False,
    deterministic: bool = True,
) -> Optional[Homomorphism]:
    """Find a homomorphism ``A -> B`` by backtracking with forward checking.

    ``embedding`` implies ``injective`` and additionally requires every
    relation of ``B`` on the image to be reflected back to ``A``. With
    ``deterministic`` the variables are taken in id order and the
    lexicographically least map is returned; otherwise the variable with the
    fewest remaining values goes next.
    """
    _check_signatures(A, B)
    injective = injective or embedding
    nA, nB = A.n, B.n
    if nA == 0:
        return Homomorphism((), True)
    if injective and nA > nB:
        return None

    rel_B = dict(B.relations())
    domains = [set(range(nB)) for _ in range(nA)]
    constraints: list[tuple[tuple[int, ...], frozenset]] = []
    for name, tuples in A.relations():
        target = rel_B.get(name, frozenset())
        for t in tuples:
            if len(set(t)) == 1:
                # every position is the same variable: a unary restriction
                v = t[0]
                domains[v] &= {u[0] for u in target if len(set(u)) == 1}
            else:
                constraints.append((t, target))
    if any(not d for d in domains):
        return None
    watching: list[list[int]] = [[] for _ in range(nA)]
    for k, (t, _) in enumerate(constraints):
        for v in set(t):
            watching[v].append(k)

    assignment: list[Optional[int]] = [None] * nA

    def reflects() -> bool:
        inverse = {b: a for a, b in enumerate(assignment)}
        rel_A = dict(A.relations())
        for name, tuples in rel_B.items():
            source = rel_A.get(name, frozenset())
            for u in tuples:
                if all(x in inverse for x in u) and tuple(inverse[x] for x in u) not in source:
                    return False
        return True

    def propagate(v: int, doms: list[set]) -> Optional[list[set]]:
        doms = list(doms)
        value = assignment[v]
        if injective:
            for u in range(nA):
                if assignment[u] is None and value in doms[u]:
                    doms[u] = doms[u] - {value}
                    if not doms[u]:
                        return None
        for k in watching[v]:
            t, target = constraints[k]
            free = {x for x in t if assignment[x] is None}
            if not free:
                if tuple(assignment[x] for x in t) not in target:
                    return None
            elif len(free) == 1:
                (u,) = free
                keep = set()
                for cand in doms[u]:
                    img = tuple(cand if x == u else assignment[x] for x in t)
                    if img in target:
                        keep.add(cand)
                if not keep:
                    return None
                doms[u] = keep
        return doms

    def pick(doms: list[set]) -> int:
        free = [v for v in range(nA) if assignment[v] is None]
        if deterministic:
            return free[0]
        return min(free, key=lambda v: (len(doms[v]), v))

    def rec(depth: int, doms: list[set]) -> bool:
        if depth == nA:
            return not embedding or reflects()
        v = pick(doms)
        for value in sorted(doms[v]):
            assignment[v] = value
            nxt = propagate(v, doms)
            if nxt is not None:
                nxt[v] = {value}
                if rec(depth + 1, nxt):
                    return True
            assignment[v] = None
        return False

    if not rec(0, domains):
        return None
    image = tuple(assignment)
    return Homomorphism(image, len(set(image)) == nA)


def is_homomorphism(A: Structure, B: Structure, f) -> bool:
    """Direct check that ``f`` (a sequence indexed by ``A``'s ids) preserves every relation."""
    _check_signatures(A, B)
    rel_B = dict(B.relations())
    for name, tuples in A.relations():
        target = rel_B.get(name, frozenset())
        for t in tuples:
            if tuple(f[x] for x in t) not in target:
                return False
    return True


def _check_oracle(X: ThetaStructure, oracle: LanguageOracle) -> None:
    if oracle.alphabet != X.alphabet:
        raise SignatureMismatch(
            f"language alphabet {oracle.alphabet.letters!r} differs from {X.alphabet.letters!r}"
        )


def find_forbidden_code(
    X: ThetaStructure,
    oracle: LanguageOracle,
    max_len: Optional[int] = None,
    threads: int = 1,
) -> Optional[ValidCode]:
    """The first valid code (in enumeration order) whose word the oracle contains."""
    _check_oracle(X, oracle)
    if max_len is None:
        max_len = default_max_len(X)
    if threads <= 1 or len(X.iota) <= 1:
        return next(enumerate_codes(X, max_len, oracle, limit=1), None)

    def first(root: int) -> Optional[ValidCode]:
        return next(enumerate_codes(X, max_len, oracle, limit=1, roots=[root]), None)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(first, sorted(X.iota)))
    # roots are in ascending order, which is also the enumeration order
    return next((code for code in results if code is not None), None)


def solve(
    X: ThetaStructure,
    oracle: LanguageOracle,
    max_len: Optional[int] = None,
    threads: int = 1,
) -> Decision:
    """YES iff ``X`` is separated and has no valid code for a word of the language."""
    _check_oracle(X, oracle)
    violations = is_separated(X)
    if violations:
        return Decision(NO, violations[0])
    code = find_forbidden_code(X, oracle, max_len, threads)
    if code is not None:
        return Decision(NO, code)
    return Decision(YES)
