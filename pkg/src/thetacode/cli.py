"""Command-line front end.

Exit codes: 0 for a positive answer or plain success, 1 for a negative
answer, 2 for usage, parse and internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import decode as dec
from . import identities as ids
from .encode import canonical_code
from .errors import ThetacodeError
from .language import parse_language_spec
from .reductions import clique_brute, clique_instance, word_instance
from .solver import hom_search, solve
from .structures import (
    Alphabet,
    parse_graph,
    parse_rho,
    parse_theta,
    serialize_rho,
    serialize_theta,
)
from .toolkit import GenParams, amalgamate, plant_code, random_separated

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Usage(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _read_structure(path: str):
    data = _read(path)
    text = data.decode("utf-8")
    for line in text.split("\n"):
        head = line.split("#", 1)[0].strip()
        if head == "rho":
            return parse_rho(text)
        if head:
            return parse_theta(text)
    return parse_theta(text)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


class _Reporter:
    """Plain or single-line JSON output for query subcommands."""

    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.timings = getattr(args, "timings", False)
        self.command = args.command
        self.start = time.perf_counter()

    def emit(self, answer: str, witness=None, lines: Sequence[str] = ()) -> None:
        if self.json:
            record = {
                "command": self.command,
                "answer": answer,
                "witness": witness,
                "timings": (
                    {"total_ms": round((time.perf_counter() - self.start) * 1000, 3)}
                    if self.timings
                    else None
                ),
            }
            print(json.dumps(record, sort_keys=True, separators=(",", ":")))
        else:
            for line in lines:
                print(line)


def _code_record(code: dec.ValidCode) -> dict:
    return {"kind": "valid-code", "word": code.word, "a": list(code.a), "c": list(code.c)}


def _violation_record(v: dec.SeparationViolation) -> dict:
    return {"kind": v.kind, "tuple": list(v.witness)}


# -- subcommands ------------------------------------------------------------


def cmd_encode_word(args) -> int:
    alphabet = Alphabet(args.alphabet or "".join(sorted(set(args.word))))
    _write(serialize_theta(word_instance(args.word, alphabet)), args.output)
    return EXIT_YES


def cmd_encode_structure(args) -> int:
    C = parse_rho(_read(args.file))
    _write(serialize_theta(canonical_code(C)), args.output)
    return EXIT_YES


def cmd_decode(args) -> int:
    X = parse_theta(_read(args.file))
    _write(serialize_rho(dec.decode(X, args.max_len)), args.output)
    return EXIT_YES


def cmd_separated(args) -> int:
    rep = _Reporter(args)
    X = parse_theta(_read(args.file))
    violations = dec.is_separated(X)
    if not violations:
        rep.emit("SEPARATED", None, ["SEPARATED"])
        return EXIT_YES
    rep.emit(
        "NOT-SEPARATED",
        [_violation_record(v) for v in violations],
        ["NOT-SEPARATED"] + [str(v) for v in violations],
    )
    return EXIT_NO


def cmd_codes(args) -> int:
    rep = _Reporter(args)
    X = parse_theta(_read(args.file))
    oracle = parse_language_spec(args.lang, X.alphabet) if args.lang else None
    if args.words:
        words = dec.realized_words(X, args.max_len, oracle)
        rep.emit("FOUND" if words else "NONE", words, words)
        return EXIT_YES if words else EXIT_NO
    codes = list(dec.enumerate_codes(X, args.max_len, oracle, args.limit))
    rep.emit(
        "FOUND" if codes else "NONE",
        [_code_record(c) for c in codes],
        [str(c) for c in codes],
    )
    return EXIT_YES if codes else EXIT_NO


def cmd_solve(args) -> int:
    rep = _Reporter(args)
    X = parse_theta(_read(args.file))
    oracle = parse_language_spec(args.lang, X.alphabet)
    decision = solve(X, oracle, args.max_len, args.threads)
    if decision.yes:
        rep.emit("YES", None, ["YES"])
        return EXIT_YES
    w = decision.witness
    record = _code_record(w) if isinstance(w, dec.ValidCode) else _violation_record(w)
    rep.emit("NO", record, [str(decision)])
    return EXIT_NO


def cmd_hom(args) -> int:
    rep = _Reporter(args)
    A = _read_structure(args.source)
    B = _read_structure(args.target)
    h = hom_search(A, B, injective=args.injective, embedding=args.embedding)
    if h is None:
        rep.emit("NO-HOM", None, ["NO-HOM"])
        return EXIT_NO
    rep.emit("HOM", list(h.map), ["HOM " + " ".join(map(str, h.map))])
    return EXIT_YES


def cmd_reduce_clique(args) -> int:
    G = parse_graph(_read(args.graph))
    _write(serialize_theta(clique_instance(G, args.n, Alphabet(args.alphabet))), args.output)
    return EXIT_YES


def cmd_clique(args) -> int:
    rep = _Reporter(args)
    G = parse_graph(_read(args.graph))
    found = clique_brute(G, args.n)
    answer = "CLIQUE" if found else "NO-CLIQUE"
    rep.emit(answer, None, [answer])
    return EXIT_YES if found else EXIT_NO


def cmd_dwnu(args) -> int:
    rep = _Reporter(args)
    if args.dwnu_command == "trivial":
        result = ids.projection_satisfiable(args.n, args.k)
        if result.satisfiable:
            rep.emit("SATISFIABLE", dict(result.choice), ["SATISFIABLE over projections"])
            return EXIT_YES
        rep.emit("UNSATISFIABLE", None, ["UNSATISFIABLE over projections"])
        return EXIT_NO
    n, k = args.system
    system = ids.dwnu_system(n, k)
    ops = ids.parse_ops(_read(args.ops))
    result = ids.eval_dwnu(system, ops, args.subset)
    if result.ok:
        rep.emit("SATISFIED", None, ["SATISFIED"])
        return EXIT_YES
    x, y = result.witness
    rep.emit(
        "VIOLATED",
        {"identity": str(result.identity), "x": x, "y": y},
        [f"VIOLATED {result.identity} x={x} y={y}"],
    )
    return EXIT_NO


def cmd_amalgamate(args) -> int:
    B = parse_theta(_read(args.first))
    C = parse_theta(_read(args.second))
    _write(serialize_theta(amalgamate(B, C, args.shared)), args.output)
    return EXIT_YES


def cmd_gen(args) -> int:
    params = GenParams(
        n=args.n,
        p_frac=args.p_frac,
        iota=args.iota,
        tau=args.tau,
        h=args.h,
        s=args.s,
        seed=args.seed,
        alphabet=args.alphabet,
    )
    _write(serialize_theta(random_separated(params)), args.output)
    return EXIT_YES


def cmd_plant(args) -> int:
    X = parse_theta(_read(args.input))
    _write(serialize_theta(plant_code(X, args.word, args.seed)), args.output)
    return EXIT_YES


# -- parser -----------------------------------------------------------------


def _add_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit one JSON record")
    p.add_argument("--timings", action="store_true", help="fill the JSON timings field")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="write to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thetacode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode-word", help="canonical code of a word's edge structure")
    p.add_argument("--word", required=True)
    p.add_argument("--alphabet", help="letters (default: the word's letters, sorted)")
    _add_output(p)
    p.set_defaults(func=cmd_encode_word)

    p = sub.add_parser("encode-structure", help="canonical code of a rho file")
    p.add_argument("file")
    _add_output(p)
    p.set_defaults(func=cmd_encode_structure)

    p = sub.add_parser("decode", help="decode a theta file")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None)
    _add_output(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("separated", help="check separatedness")
    p.add_argument("file")
    _add_query_flags(p)
    p.set_defaults(func=cmd_separated)

    p = sub.add_parser("codes", help="list valid codes")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--lang", help="only words of this language")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--words", action="store_true", help="list realized words only")
    _add_query_flags(p)
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("solve", help="decide the CSP of an encoded trivial template")
    p.add_argument("file")
    p.add_argument("--lang", required=True)
    p.add_argument("--deterministic", action="store_true", help="least witness (always on)")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    _add_query_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("hom", help="homomorphism search between two structures")
    p.add_argument("source")
    p.add_argument("target")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--injective", action="store_true")
    mode.add_argument("--embedding", action="store_true")
    _add_query_flags(p)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("reduce-clique", help="clique instance of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphabet", required=True)
    _add_output(p)
    p.set_defaults(func=cmd_reduce_clique)

    p = sub.add_parser("clique", help="brute-force clique test")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_query_flags(p)
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("dwnu", help="dissected weak near-unanimity identities")
    dsub = p.add_subparsers(dest="dwnu_command", required=True)
    q = dsub.add_parser("trivial", help="satisfiability by projections")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    _add_query_flags(q)
    q = dsub.add_parser("eval", help="evaluate on operation tables")
    q.add_argument("--system", type=int, nargs=2, metavar=("N", "K"), required=True)
    q.add_argument("--ops", required=True)
    q.add_argument("--subset", type=int, nargs="+", default=None)
    _add_query_flags(q)
    p.set_defaults(func=cmd_dwnu)

    p = sub.add_parser("amalgamate", help="strong amalgam over a shared prefix")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--shared", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_amalgamate)

    p = sub.add_parser("gen", help="random separated structure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p-frac", type=float, default=0.5)
    p.add_argument("--iota", type=float, default=0.3)
    p.add_argument("--tau", type=float, default=0.3)
    p.add_argument("--h", type=float, default=0.3)
    p.add_argument("--s", type=float, default=0.05)
    p.add_argument("--alphabet", default="ab")
    _add_output(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("plant", help="append a valid code for a word")
    p.add_argument("--word", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=cmd_plant)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_YES if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (ThetacodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
