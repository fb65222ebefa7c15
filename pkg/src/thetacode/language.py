"""Word languages over an alphabet, restricted to words of length at least two.

Every oracle answers two queries: ``contains(w)`` and
``may_extend(prefix, max_total_len)``, the latter telling a search whether
any member of the language of length at most ``max_total_len`` starts with
``prefix``. Languages are always intersected with the words of length >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ParseError, UnknownVariant
from .structures import Alphabet, _int, _lines


class LanguageOracle:
    variant: str
    alphabet: Alphabet

    def contains(self, w: str) -> bool:
        raise NotImplementedError

    def may_extend(self, prefix: str, max_total_len: int) -> bool:
        raise NotImplementedError

    def _lengths(self, prefix: str, max_total_len: int) -> range:
        self.alphabet.check_word(prefix)
        return range(max(2, len(prefix)), max_total_len + 1)


class AllWords(LanguageOracle):
    variant = "all"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def contains(self, w):
        self.alphabet.check_word(w)
        return len(w) >= 2

    def may_extend(self, prefix, max_total_len):
        return len(self._lengths(prefix, max_total_len)) > 0


class NoWords(LanguageOracle):
    variant = "none"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def contains(self, w):
        self.alphabet.check_word(w)
        return False

    def may_extend(self, prefix, max_total_len):
        self.alphabet.check_word(prefix)
        return False


def _word_set(words: Iterable[str], alphabet: Alphabet) -> frozenset:
    out = frozenset(words)
    for w in out:
        alphabet.check_word(w, 2)
    return out


class FiniteLanguage(LanguageOracle):
    variant = "finite"

    def __init__(self, words: Iterable[str], alphabet: Alphabet):
        self.alphabet = alphabet
        self.words = _word_set(words, alphabet)
        # prefix -> length of the shortest member below it
        self._shortest: dict[str, int] = {}
        for w in self.words:
            for i in range(len(w) + 1):
                p = w[:i]
                self._shortest[p] = min(self._shortest.get(p, len(w)), len(w))

    def contains(self, w):
        self.alphabet.check_word(w)
        return w in self.words

    def may_extend(self, prefix, max_total_len):
        self.alphabet.check_word(prefix)
        shortest = self._shortest.get(prefix)
        return shortest is not None and shortest <= max_total_len


class CofiniteLanguage(LanguageOracle):
    """All words of length >= 2 except finitely many excluded ones."""

    variant = "cofinite"

    def __init__(self, excluded: Iterable[str], alphabet: Alphabet):
        self.alphabet = alphabet
        self.excluded = _word_set(excluded, alphabet)

    def contains(self, w):
        self.alphabet.check_word(w)
        return len(w) >= 2 and w not in self.excluded

    def may_extend(self, prefix, max_total_len):
        lengths = self._lengths(prefix, max_total_len)
        k = len(self.alphabet)
        total = sum(k ** (m - len(prefix)) for m in lengths)
        blocked = sum(
            1 for w in self.excluded if w.startswith(prefix) and len(w) in lengths
        )
        return total - blocked > 0


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    states: int
    start: int
    accept: frozenset
    trans: Mapping[tuple[int, str], int]

    def __post_init__(self):
        if not 0 <= self.start < self.states:
            raise ValueError(f"start state {self.start} out of range")
        for q in self.accept:
            if not 0 <= q < self.states:
                raise ValueError(f"accepting state {q} out of range")
        for q in range(self.states):
            for s in self.alphabet:
                target = self.trans.get((q, s))
                if target is None:
                    raise ValueError(f"missing transition from state {q} on {s!r}")
                if not 0 <= target < self.states:
                    raise ValueError(f"transition target {target} out of range")

    def run(self, word: str, state: int | None = None) -> int:
        q = self.start if state is None else state
        for ch in word:
            q = self.trans[(q, ch)]
        return q


class DfaLanguage(LanguageOracle):
    variant = "dfa"

    def __init__(self, dfa: Dfa):
        self.dfa = dfa
        self.alphabet = dfa.alphabet
        # _accepting_in[j]: states from which some word of length exactly j is accepted
        self._accepting_in: list[frozenset] = [frozenset(dfa.accept)]

    def _states_accepting_in(self, j: int) -> frozenset:
        table = self._accepting_in
        while len(table) <= j:
            prev = table[-1]
            table.append(
                frozenset(
                    q
                    for q in range(self.dfa.states)
                    if any(self.dfa.trans[(q, s)] in prev for s in self.alphabet)
                )
            )
        return table[j]

    def contains(self, w):
        self.alphabet.check_word(w)
        return len(w) >= 2 and self.dfa.run(w) in self.dfa.accept

    def may_extend(self, prefix, max_total_len):
        lengths = self._lengths(prefix, max_total_len)
        q = self.dfa.run(prefix)
        return any(q in self._states_accepting_in(m - len(prefix)) for m in lengths)


# -- files -----------------------------------------------------------------


def parse_word_list(text: str | bytes, alphabet: Alphabet) -> frozenset:
    words = set()
    for lineno, tokens in _lines(text):
        for w in tokens:
            bad = [ch for ch in w if ch not in alphabet]
            if bad:
                raise ParseError(lineno, f"letter {bad[0]!r} not in alphabet")
            if len(w) < 2:
                raise ParseError(lineno, f"word {w!r} shorter than 2")
            words.add(w)
    return frozenset(words)


def parse_dfa(text: str | bytes) -> Dfa:
    lines = _lines(text)
    fields: dict[str, tuple[int, list[str]]] = {}
    trans: dict[tuple[int, str], int] = {}
    header = next(lines, None)
    if header is None or header[1] != ["dfa"]:
        raise ParseError(header[0] if header else 0, "expected header 'dfa'")
    for lineno, tokens in lines:
        key = tokens[0]
        if key == "trans":
            if len(tokens) != 4:
                raise ParseError(lineno, "expected 'trans <q> <letter> <q'>'")
            trans[(_int(tokens[1], lineno), tokens[2])] = _int(tokens[3], lineno)
        elif key in ("alphabet", "states", "start", "accept"):
            if key in fields:
                raise ParseError(lineno, f"duplicate {key!r} line")
            fields[key] = (lineno, tokens[1:])
        else:
            raise ParseError(lineno, f"unknown dfa line {key!r}")
    for key in ("alphabet", "states", "start", "accept"):
        if key not in fields:
            raise ParseError(0, f"missing {key!r} line")
    lineno, args = fields["alphabet"]
    if len(args) != 1:
        raise ParseError(lineno, "expected 'alphabet <letters>'")
    try:
        alphabet = Alphabet(args[0])
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from None
    for key in ("states", "start"):
        if len(fields[key][1]) != 1:
            raise ParseError(fields[key][0], f"expected '{key} <int>'")
    states = _int(fields["states"][1][0], fields["states"][0])
    start = _int(fields["start"][1][0], fields["start"][0])
    accept = frozenset(_int(t, fields["accept"][0]) for t in fields["accept"][1])
    for q, s in trans:
        if s not in alphabet:
            raise ParseError(0, f"transition on letter {s!r} not in alphabet")
    try:
        return Dfa(alphabet, states, start, accept, trans)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def parse_language_spec(spec: str, alphabet: Alphabet) -> LanguageOracle:
    """Build an oracle from ``all``, ``none``, ``finite:PATH``, ``cofinite:PATH`` or ``dfa:PATH``."""
    if spec == "all":
        return AllWords(alphabet)
    if spec == "none":
        return NoWords(alphabet)
    variant, sep, path = spec.partition(":")
    if not sep or variant not in ("finite", "cofinite", "dfa"):
        raise UnknownVariant(f"unknown language spec {spec!r}")
    text = Path(path).read_bytes()
    if variant == "dfa":
        dfa = parse_dfa(text)
        if dfa.alphabet != alphabet:
            raise ParseError(
                0, f"dfa alphabet {dfa.alphabet.letters!r} differs from {alphabet.letters!r}"
            )
        return DfaLanguage(dfa)
    words = parse_word_list(text, alphabet)
    if variant == "finite":
        return FiniteLanguage(words, alphabet)
    return CofiniteLanguage(words, alphabet)

