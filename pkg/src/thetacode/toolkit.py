"""Strong amalgamation of separated structures and seeded instance generators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .decode import is_separated
from .errors import NotSeparated, SharedPartMismatch
from .rng import XorShift64Star
from .structures import Alphabet, RhoStructure, ThetaStructure, induced_substructure, serialize_theta

# exhaustive Bernoulli sampling of S quads up to this many candidates
_S_EXHAUSTIVE_LIMIT = 50_000


@dataclass(frozen=True)
class GenParams:
    n: int
    p_frac: float = 0.5
    iota: float = 0.3
    tau: float = 0.3
    h: float = 0.3
    s: float = 0.05
    seed: int = 0
    alphabet: str = "ab"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        for name in ("p_frac", "iota", "tau", "h", "s"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _rng(rng: Union[XorShift64Star, int]) -> XorShift64Star:
    return rng if isinstance(rng, XorShift64Star) else XorShift64Star(rng)


def _sample_s(rng, P, free, density):
    quads = set()
    if not P or len(free) < 2 or density <= 0:
        return quads
    total = len(P) ** 2 * len(free) * (len(free) - 1)
    if total <= _S_EXHAUSTIVE_LIMIT:
        for a in P:
            for b in P:
                for c in free:
                    for d in free:
                        if c != d and rng.chance(density):
                            quads.add((a, b, c, d))
    else:
        for _ in range(round(density * total)):
            c, d = rng.sample(free, 2)
            quads.add((rng.choice(P), rng.choice(P), c, d))
    return quads


def random_separated(params: GenParams) -> ThetaStructure:
    """A random separated structure; identical params give identical output.

    ``H``, ``iota`` and ``tau`` are drawn on non-``P`` elements only, and
    every ``S`` quad joins two ``P`` elements to two distinct non-``P`` ones.
    """
    rng = XorShift64Star(params.seed)
    alphabet = Alphabet(params.alphabet)
    n = params.n
    order = list(range(n))
    rng.shuffle(order)
    P = sorted(order[: round(params.p_frac * n)])
    free = sorted(order[len(P):])
    iota = [x for x in free if rng.chance(params.iota)]
    tau = [x for x in free if rng.chance(params.tau)]
    H = {s: [(u, v) for u in free for v in free if rng.chance(params.h)] for s in alphabet}
    S = _sample_s(rng, P, free, params.s)
    return ThetaStructure(n, alphabet, P, iota, tau, H, S)


def random_extension(base: ThetaStructure, extra: int, params: GenParams) -> ThetaStructure:
    """Add ``extra`` elements and random tuples touching them; ``base`` stays induced.

    The result is separated when ``base`` is.
    """
    rng = XorShift64Star(params.seed)
    n = base.n + extra
    new = list(range(base.n, n))
    new_P = [x for x in new if rng.chance(params.p_frac)]
    P = sorted(base.P | set(new_P))
    free = [x for x in range(n) if x not in P]
    fresh = set(new)
    iota = set(base.iota) | {x for x in free if x in fresh and rng.chance(params.iota)}
    tau = set(base.tau) | {x for x in free if x in fresh and rng.chance(params.tau)}
    H = {}
    for s in base.alphabet:
        pairs = set(base.H[s])
        for u in free:
            for v in free:
                if (u in fresh or v in fresh) and rng.chance(params.h):
                    pairs.add((u, v))
        H[s] = pairs
    S = set(base.S)
    S |= {q for q in _sample_s(rng, P, free, params.s) if fresh.intersection(q)}
    return ThetaStructure(n, base.alphabet, P, iota, tau, H, S)


def random_rho(
    n: int, alphabet: Alphabet, max_word_len: int, facts: int, seed: int
) -> RhoStructure:
    """A random word-signature structure with about ``facts`` facts."""
    rng = XorShift64Star(seed)
    out: dict[str, set] = {}
    if n > 0:
        for _ in range(facts):
            m = rng.randint(2, max_word_len)
            w = "".join(rng.choice(alphabet.letters) for _ in range(m))
            out.setdefault(w, set()).add(tuple(rng.below(n) for _ in range(m)))
    return RhoStructure(n, alphabet, out)


def amalgamate(B: ThetaStructure, C: ThetaStructure, shared: int) -> ThetaStructure:
    """Free amalgam of ``B`` and ``C`` over their common prefix ``0..shared-1``.

    ``B`` keeps its ids; the non-shared ids of ``C`` are shifted by
    ``|B| - shared``. Every relation is the union of the two images.
    """
    if B.alphabet != C.alphabet:
        raise SharedPartMismatch("structures use different alphabets")
    if not 0 <= shared <= min(B.n, C.n):
        raise SharedPartMismatch(f"shared prefix {shared} longer than a structure")
    common = range(shared)
    if serialize_theta(induced_substructure(B, common)) != serialize_theta(
        induced_substructure(C, common)
    ):
        raise SharedPartMismatch(f"first {shared} elements induce different substructures")
    for name, X in (("first", B), ("second", C)):
        violations = is_separated(X)
        if violations:
            raise NotSeparated(f"{name} structure is not separated: {violations[0]}")

    shift = B.n - shared

    def m(x: int) -> int:
        return x if x < shared else x + shift

    return ThetaStructure(
        B.n + C.n - shared,
        B.alphabet,
        B.P | {m(x) for x in C.P},
        B.iota | {m(x) for x in C.iota},
        B.tau | {m(x) for x in C.tau},
        {s: B.H[s] | {(m(u), m(v)) for u, v in C.H[s]} for s in B.alphabet},
        B.S | {tuple(map(m, q)) for q in C.S},
    )


def plant_code(
    X: ThetaStructure, w: str, rng: Union[XorShift64Star, int]
) -> ThetaStructure:
    """Append a fresh valid ``w``-code to ``X``.

    The ``c`` side is always ``|w|`` new non-``P`` elements. The ``a`` side
    reuses distinct existing ``P`` elements, drawing new ones only when
    ``P`` is too small.
    """
    X.alphabet.check_word(w, 2)
    rng = _rng(rng)
    m = len(w)
    n = X.n
    old_P = sorted(X.P)
    if len(old_P) >= m:
        a = rng.sample(old_P, m)
    else:
        a = old_P + list(range(n, n + m - len(old_P)))
        rng.shuffle(a)
        n += m - len(old_P)
    c = list(range(n, n + m))
    n += m
    H = {s: set(X.H[s]) for s in X.alphabet}
    for i in range(m):
        H[w[i]].add((c[i], c[(i + 1) % m]))
    S = set(X.S)
    S |= {(a[i], a[j], c[i], c[j]) for i in range(m) for j in range(m) if i != j}
    return ThetaStructure(
        n, X.alphabet, X.P | set(a), X.iota | {c[0]}, X.tau | {c[-1]}, H, S
    )
