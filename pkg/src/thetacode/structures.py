"""Finite relational structures over the code signature and word signatures.

Elements are dense integer ids ``0..n-1``. Structures are immutable; every
relation is stored as a frozenset of tuples and iterated in sorted order
wherever output or search order matters.

The code signature has unary relations ``P``, ``iota``, ``tau``, one binary
relation ``H[s]`` per alphabet letter ``s`` and the 4-ary relation ``S``.
A word signature has one relation ``R_w`` of arity ``len(w)`` per word ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from .errors import IdOutOfRange, LetterNotInAlphabet, ParseError, WordTooShort

Text = Union[str, bytes]


@dataclass(frozen=True)
class Alphabet:
    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"alphabet has repeated letters: {self.letters!r}")
        for ch in self.letters:
            if not ch.isprintable() or ch.isspace() or ch == "#":
                raise ValueError(f"invalid alphabet letter {ch!r}")
        object.__setattr__(self, "_index", {ch: i for i, ch in enumerate(self.letters)})

    def __contains__(self, letter: str) -> bool:
        return letter in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise LetterNotInAlphabet(f"letter {letter!r} not in alphabet {self.letters!r}") from None

    def word_key(self, word: str) -> tuple[int, ...]:
        """Sort key giving the lexicographic word order fixed by the letter order."""
        return tuple(self.index(ch) for ch in word)

    def check_word(self, word: str, min_len: int = 0) -> str:
        for ch in word:
            self.index(ch)
        if len(word) < min_len:
            raise WordTooShort(f"word {word!r} has length {len(word)} < {min_len}")
        return word

    def words(self, length: int) -> Iterator[str]:
        """All words of the given length, in lexicographic order."""
        if length == 0:
            yield ""
            return
        for prefix in self.words(length - 1):
            for ch in self.letters:
                yield prefix + ch


def _ids(ids: Iterable[int], n: int, what: str) -> frozenset:
    out = frozenset(ids)
    for x in out:
        if not 0 <= x < n:
            raise IdOutOfRange(f"{what}: id {x} outside domain of size {n}")
    return out


def _tuples(tuples: Iterable[tuple], n: int, arity: int | None, what: str) -> frozenset:
    out = frozenset(tuple(t) for t in tuples)
    for t in out:
        if arity is not None and len(t) != arity:
            raise ValueError(f"{what}: tuple {t} does not have arity {arity}")
        for x in t:
            if not 0 <= x < n:
                raise IdOutOfRange(f"{what}: id {x} outside domain of size {n}")
    return out


@dataclass(frozen=True, eq=False)
class ThetaStructure:
    n: int
    alphabet: Alphabet
    P: frozenset = frozenset()
    iota: frozenset = frozenset()
    tau: frozenset = frozenset()
    H: Mapping[str, frozenset] = field(default_factory=dict)
    S: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("domain size must be non-negative")
        n = self.n
        object.__setattr__(self, "P", _ids(self.P, n, "P"))
        object.__setattr__(self, "iota", _ids(self.iota, n, "iota"))
        object.__setattr__(self, "tau", _ids(self.tau, n, "tau"))
        H = {s: frozenset() for s in self.alphabet}
        for s, pairs in self.H.items():
            self.alphabet.index(s)
            H[s] = _tuples(pairs, n, 2, f"H {s}")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "S", _tuples(self.S, n, 4, "S"))

    def _key(self):
        return (
            self.n,
            self.alphabet.letters,
            self.P,
            self.iota,
            self.tau,
            tuple(self.H[s] for s in self.alphabet),
            self.S,
        )

    def __eq__(self, other):
        if not isinstance(other, ThetaStructure):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self) -> int:
        return self.n

    def relations(self) -> Iterator[tuple[str, frozenset]]:
        """Every relation as ``(name, tuples)``; unary relations as 1-tuples."""
        yield "P", frozenset((x,) for x in self.P)
        yield "iota", frozenset((x,) for x in self.iota)
        yield "tau", frozenset((x,) for x in self.tau)
        for s in self.alphabet:
            yield f"H {s}", self.H[s]
        yield "S", self.S

    def signature_key(self) -> tuple:
        return ("theta", self.alphabet.letters)


@dataclass(frozen=True, eq=False)
class RhoStructure:
    n: int
    alphabet: Alphabet
    facts: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("domain size must be non-negative")
        facts = {}
        for w, tuples in self.facts.items():
            self.alphabet.check_word(w, 2)
            ts = _tuples(tuples, self.n, len(w), f"R {w}")
            if ts:
                facts[w] = ts
        object.__setattr__(self, "facts", facts)

    def _key(self):
        return (self.n, self.alphabet.letters, frozenset(self.facts.items()))

    def __eq__(self, other):
        if not isinstance(other, RhoStructure):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self) -> int:
        return self.n

    def words(self) -> list[str]:
        return sorted(self.facts, key=self.alphabet.word_key)

    def max_word_len(self) -> int:
        return max((len(w) for w in self.facts), default=0)

    def relations(self) -> Iterator[tuple[str, frozenset]]:
        for w in self.words():
            yield f"R {w}", self.facts[w]

    def signature_key(self) -> tuple:
        return ("rho", self.alphabet.letters)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise IdOutOfRange(f"edge ({u}, {v}) outside vertex range {self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def arcs(self) -> list[tuple[int, int]]:
        """Both orientations of every edge, sorted."""
        return sorted([(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges])


def induced_substructure(X: ThetaStructure, keep: Iterable[int]) -> ThetaStructure:
    keep = sorted(set(keep))
    for x in keep:
        if not 0 <= x < X.n:
            raise IdOutOfRange(f"id {x} outside domain of size {X.n}")
    new = {old: i for i, old in enumerate(keep)}

    def unary(rel):
        return [new[x] for x in rel if x in new]

    def tuples(rel):
        return [tuple(new[x] for x in t) for t in rel if all(x in new for x in t)]

    return ThetaStructure(
        n=len(keep),
        alphabet=X.alphabet,
        P=unary(X.P),
        iota=unary(X.iota),
        tau=unary(X.tau),
        H={s: tuples(X.H[s]) for s in X.alphabet},
        S=tuples(X.S),
    )


# -- text formats ----------------------------------------------------------


def _lines(text: Text) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.split("\n"), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield lineno, tokens


def _int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {token!r}") from None
    if value < 0 or not token.isdigit():
        raise ParseError(lineno, f"expected a non-negative integer, got {token!r}")
    return value


def _id(token: str, lineno: int, n: int) -> int:
    value = _int(token, lineno)
    if value >= n:
        raise ParseError(lineno, f"id {value} >= domain size {n}")
    return value


class _Header:
    def __init__(self, text: Text, kind: str, with_alphabet: bool = True):
        self.lines = _lines(text)
        lineno, tokens = self._next(f"missing {kind!r} header")
        if tokens != [kind]:
            raise ParseError(lineno, f"expected header {kind!r}")
        self.alphabet = None
        if with_alphabet:
            lineno, tokens = self._next("missing alphabet line")
            if tokens[0] != "alphabet" or len(tokens) != 2:
                raise ParseError(lineno, "expected 'alphabet <letters>'")
            try:
                self.alphabet = Alphabet(tokens[1])
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        lineno, tokens = self._next("missing domain line")
        if tokens[0] != "domain" or len(tokens) != 2:
            raise ParseError(lineno, "expected 'domain <n>'")
        self.n = _int(tokens[1], lineno)

    def _next(self, message: str):
        try:
            return next(self.lines)
        except StopIteration:
            raise ParseError(0, message) from None


def parse_theta(text: Text) -> ThetaStructure:
    head = _Header(text, "theta")
    n, alphabet = head.n, head.alphabet
    unary = {"P": set(), "iota": set(), "tau": set()}
    H = {s: set() for s in alphabet}
    S = set()
    for lineno, tokens in head.lines:
        key, args = tokens[0], tokens[1:]
        if key in unary:
            unary[key].update(_id(t, lineno, n) for t in args)
        elif key == "H":
            if len(args) != 3:
                raise ParseError(lineno, "expected 'H <letter> <id> <id>'")
            if args[0] not in alphabet:
                raise ParseError(lineno, f"letter {args[0]!r} not in alphabet")
            H[args[0]].add((_id(args[1], lineno, n), _id(args[2], lineno, n)))
        elif key == "S":
            if len(args) != 4:
                raise ParseError(lineno, "expected 'S <id> <id> <id> <id>'")
            S.add(tuple(_id(t, lineno, n) for t in args))
        else:
            raise ParseError(lineno, f"unknown relation {key!r}")
    return ThetaStructure(n, alphabet, unary["P"], unary["iota"], unary["tau"], H, S)


def serialize_theta(X: ThetaStructure) -> str:
    out = ["theta", f"alphabet {X.alphabet.letters}", f"domain {X.n}"]
    for name, rel in (("P", X.P), ("iota", X.iota), ("tau", X.tau)):
        if rel:
            out.append(name + " " + " ".join(map(str, sorted(rel))))
    for s in X.alphabet:
        out.extend(f"H {s} {u} {v}" for u, v in sorted(X.H[s]))
    out.extend("S " + " ".join(map(str, q)) for q in sorted(X.S))
    return "\n".join(out) + "\n"


def parse_rho(text: Text) -> RhoStructure:
    head = _Header(text, "rho")
    n, alphabet = head.n, head.alphabet
    facts: dict[str, set] = {}
    for lineno, tokens in head.lines:
        if tokens[0] != "R" or len(tokens) < 2:
            raise ParseError(lineno, "expected 'R <word> <ids...>'")
        word = tokens[1]
        bad = [ch for ch in word if ch not in alphabet]
        if bad:
            raise ParseError(lineno, f"letter {bad[0]!r} not in alphabet")
        if len(word) < 2:
            raise ParseError(lineno, f"word {word!r} shorter than 2")
        if len(tokens) - 2 != len(word):
            raise ParseError(lineno, f"R {word} needs {len(word)} ids, got {len(tokens) - 2}")
        facts.setdefault(word, set()).add(tuple(_id(t, lineno, n) for t in tokens[2:]))
    return RhoStructure(n, alphabet, facts)


def serialize_rho(C: RhoStructure) -> str:
    out = ["rho", f"alphabet {C.alphabet.letters}", f"domain {C.n}"]
    for w in C.words():
        out.extend(f"R {w} " + " ".join(map(str, t)) for t in sorted(C.facts[w]))
    return "\n".join(out) + "\n"


def parse_graph(text: Text) -> Graph:
    head = _Header(text, "graph", with_alphabet=False)
    n = head.n
    edges = set()
    for lineno, tokens in head.lines:
        if tokens[0] != "edge" or len(tokens) != 3:
            raise ParseError(lineno, "expected 'edge <u> <v>'")
        u, v = _id(tokens[1], lineno, n), _id(tokens[2], lineno, n)
        if u == v:
            raise ParseError(lineno, f"loop at vertex {u}")
        edges.add((u, v))
    return Graph(n, frozenset(edges))


def serialize_graph(G: Graph) -> str:
    out = ["graph", f"domain {G.n}"]
    out.extend(f"edge {u} {v}" for u, v in sorted(G.edges))
    return "\n".join(out) + "\n"
