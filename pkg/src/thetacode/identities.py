"""Dissected weak near-unanimity identities over finite operation tables.

For ``n > k > 1`` the system has binary symbols ``g_1..g_n`` and one
``k``-ary symbol ``f_psi`` per injection ``psi: {1..k} -> {1..n}``, with the
identities

    f_psi(x, .., x, y, x, .., x) = g_psi(i)(x, y)      (y at position i)

for every ``psi`` and every ``i`` in ``1..k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Mapping, Optional, Sequence

from .errors import ArityMismatch, BadParameters, DomainMismatch, NotWnu, ParseError
from .structures import _int, _lines


@dataclass(frozen=True)
class OperationTable:
    arity: int
    d: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 1 or self.d < 1:
            raise ValueError("arity and domain size must be positive")
        values = tuple(self.values)
        if len(values) != self.d**self.arity:
            raise ValueError(f"table needs {self.d ** self.arity} entries, got {len(values)}")
        if any(not 0 <= v < self.d for v in values):
            raise ValueError("table entry outside the domain")
        object.__setattr__(self, "values", values)

    def __call__(self, *args: int) -> int:
        index = 0
        for x in args:
            index = index * self.d + x
        return self.values[index]

    @classmethod
    def from_function(cls, fn: Callable[..., int], arity: int, d: int) -> "OperationTable":
        return cls(arity, d, tuple(fn(*args) for args in product(range(d), repeat=arity)))

    @classmethod
    def projection(cls, index: int, arity: int, d: int) -> "OperationTable":
        """The projection onto argument ``index`` (0-based)."""
        return cls.from_function(lambda *args: args[index], arity, d)


def f_name(psi: Sequence[int]) -> str:
    return "f_" + "_".join(map(str, psi))


def g_name(i: int) -> str:
    return f"g_{i}"


@dataclass(frozen=True)
class Identity:
    psi: tuple[int, ...]
    position: int  # 1-based position of y on the left-hand side

    @property
    def f(self) -> str:
        return f_name(self.psi)

    @property
    def g(self) -> str:
        return g_name(self.psi[self.position - 1])

    def __str__(self):
        k = len(self.psi)
        args = ",".join("y" if i == self.position else "x" for i in range(1, k + 1))
        return f"{self.f}({args}) = {self.g}(x,y)"


@dataclass(frozen=True)
class DwnuSystem:
    n: int
    k: int
    injections: tuple[tuple[int, ...], ...]
    identities: tuple[Identity, ...]

    @property
    def symbols(self) -> list[str]:
        return [g_name(i) for i in range(1, self.n + 1)] + [f_name(p) for p in self.injections]


def _check_params(n: int, k: int) -> None:
    if not n > k > 1:
        raise BadParameters(f"need n > k > 1, got n={n}, k={k}")


def dwnu_system(n: int, k: int) -> DwnuSystem:
    _check_params(n, k)
    injections = tuple(permutations(range(1, n + 1), k))
    identities = tuple(Identity(psi, i) for psi in injections for i in range(1, k + 1))
    return DwnuSystem(n, k, injections, identities)


@dataclass(frozen=True)
class EvalResult:
    ok: bool
    identity: Optional[Identity] = None
    witness: Optional[tuple[int, int]] = None


def _lookup(assignment: Mapping[str, OperationTable], name: str) -> OperationTable:
    # "f" and "g" act as defaults for every f_psi / g_i
    for key in (name, name.split("_", 1)[0]):
        if key in assignment:
            return assignment[key]
    raise BadParameters(f"assignment has no operation for {name}")


def eval_dwnu(
    system: DwnuSystem,
    assignment: Mapping[str, OperationTable],
    F: Optional[Sequence[int]] = None,
) -> EvalResult:
    """Check every identity for all ``x, y`` in ``F`` (default: whole domain).

    Stops at the first failing identity; the witness is the least ``(x, y)``.
    """
    tables = {name: _lookup(assignment, name) for name in system.symbols}
    sizes = {t.d for t in tables.values()}
    if len(sizes) != 1:
        raise DomainMismatch(f"operations disagree on the domain size: {sorted(sizes)}")
    (d,) = sizes
    for name, t in tables.items():
        want = 2 if name.startswith("g") else system.k
        if t.arity != want:
            raise ArityMismatch(f"{name} has arity {t.arity}, expected {want}")
    points = sorted(set(range(d) if F is None else F))
    if any(not 0 <= x < d for x in points):
        raise DomainMismatch(f"subset {points} not inside domain of size {d}")
    k = system.k
    for ident in system.identities:
        f, g = tables[ident.f], tables[ident.g]
        for x, y in product(points, repeat=2):
            args = [x] * k
            args[ident.position - 1] = y
            if f(*args) != g(x, y):
                return EvalResult(False, ident, (x, y))
    return EvalResult(True)


@dataclass(frozen=True)
class ProjectionResult:
    satisfiable: bool
    k: int
    # symbol -> 1-based projection index, when satisfiable
    choice: Optional[Mapping[str, int]] = None

    def tables(self, d: int = 2) -> dict[str, OperationTable]:
        if self.choice is None:
            raise ValueError("no satisfying assignment")
        return {
            name: OperationTable.projection(j - 1, 2 if name.startswith("g") else self.k, d)
            for name, j in self.choice.items()
        }


def projection_satisfiable(n: int, k: int) -> ProjectionResult:
    """Decide whether projections on a two-element set satisfy the ``(n, k)`` system.

    The ``f_psi`` share only the ``g_i``, so for each of the ``2^n`` choices
    of ``g``'s every ``psi`` is solved on its own. With ``f_psi`` the
    projection onto argument ``j`` and ``x != y``, identity ``i`` holds iff
    ``(j == i)`` equals ``(g_psi(i) is the second projection)``.
    """
    _check_params(n, k)
    injections = list(permutations(range(1, n + 1), k))
    for g_second in product((False, True), repeat=n):
        choice: dict[str, int] = {g_name(i + 1): 2 if g_second[i] else 1 for i in range(n)}
        for psi in injections:
            j = next(
                (
                    j
                    for j in range(1, k + 1)
                    if all((j == i) == g_second[psi[i - 1] - 1] for i in range(1, k + 1))
                ),
                None,
            )
            if j is None:
                break
            choice[f_name(psi)] = j
        else:
            return ProjectionResult(True, k, choice)
    return ProjectionResult(False, k)


def is_wnu(f: OperationTable) -> Optional[tuple[int, int]]:
    """``None`` if ``f`` satisfies the weak near-unanimity identities, else a failing ``(x, y)``."""
    k, d = f.arity, f.d
    for x, y in product(range(d), repeat=2):
        seen = set()
        for i in range(k):
            args = [x] * k
            args[i] = y
            seen.add(f(*args))
        if len(seen) > 1:
            return (x, y)
    return None


def wnu_model(f: OperationTable, n: int) -> dict[str, OperationTable]:
    """Every ``f_psi := f`` and ``g_i(x, y) := f(y, x, .., x)``."""
    k = f.arity
    _check_params(n, k)
    bad = is_wnu(f)
    if bad is not None:
        raise NotWnu(*bad, f"operation is not a weak near-unanimity operation at (x, y) = {bad}")
    g = OperationTable.from_function(lambda x, y: f(y, *([x] * (k - 1))), 2, f.d)
    out = {g_name(i): g for i in range(1, n + 1)}
    out.update({f_name(psi): f for psi in permutations(range(1, n + 1), k)})
    return out


def restrict_assignment(
    assignment: Mapping[str, OperationTable], n: int, k: int
) -> dict[str, OperationTable]:
    """The operations of the ``(n, k)`` subsystem, taken from a larger system's assignment."""
    system = dwnu_system(n, k)
    return {name: _lookup(assignment, name) for name in system.symbols}


# -- operation-table files --------------------------------------------------


def parse_ops(text: str | bytes) -> dict[str, OperationTable]:
    tokens = [(lineno, tok) for lineno, toks in _lines(text) for tok in toks]
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(tokens[-1][0] if tokens else 0, f"unexpected end of file, expected {what}")
        pos += 1
        return tokens[pos - 1]

    lineno, tok = take("'ops'")
    if tok != "ops":
        raise ParseError(lineno, "expected header 'ops'")
    lineno, tok = take("'domain'")
    if tok != "domain":
        raise ParseError(lineno, "expected 'domain <d>'")
    d = _int(take("domain size")[1], lineno)
    if d < 1:
        raise ParseError(lineno, "domain size must be positive")
    ops: dict[str, OperationTable] = {}
    while pos < len(tokens):
        lineno, tok = take("'op'")
        if tok != "op":
            raise ParseError(lineno, f"expected 'op <name> <arity>', got {tok!r}")
        name = take("operation name")[1]
        lineno, tok = take("arity")
        arity = _int(tok, lineno)
        if arity < 1:
            raise ParseError(lineno, "arity must be positive")
        if name in ops:
            raise ParseError(lineno, f"duplicate operation {name!r}")
        values = []
        for _ in range(d**arity):
            lineno, tok = take(f"{d ** arity} values for {name}")
            v = _int(tok, lineno)
            if v >= d:
                raise ParseError(lineno, f"value {v} outside domain of size {d}")
            values.append(v)
        ops[name] = OperationTable(arity, d, tuple(values))
    return ops


def serialize_ops(ops: Mapping[str, OperationTable]) -> str:
    sizes = {t.d for t in ops.values()}
    if len(sizes) != 1:
        raise DomainMismatch("operations disagree on the domain size")
    out = ["ops", f"domain {sizes.pop()}"]
    for name, t in ops.items():
        out.append(f"op {name} {t.arity}")
        out.append(" ".join(map(str, t.values)))
    return "\n".join(out) + "\n"
