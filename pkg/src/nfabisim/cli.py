"""Line-oriented automaton/relation file formats and the command surface.

Automaton files (UTF-8, ``#`` starts a comment):

    states 5
    alphabet x y
    initial 0 1
    terminal 2 4
    x: 0->0 0->1 1->0
    y: 0->0

The four header sections are mandatory and appear once, in that order;
``initial`` and ``terminal`` may list no states.  One optional transition
line per declared symbol follows, transitions written ``src->dst``.

Relation files carry a ``rows cols`` header followed by one 0/1 string per
row.

Exit codes: 0 for a positive verdict (or plain success), 1 for a negative
verdict, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys

from . import equivalence
from .automaton import Nfa, random_nfa, reverse
from .bisim import (
    BisimKind,
    check,
    greatest_backward_bisim,
    greatest_backward_forward_bisim,
    greatest_forward_backward_bisim,
    greatest_forward_bisim,
    greatest_weak_forward_bisim,
    greatest_weak_backward_bisim,
    greatest_weak_forward_sim,
)
from .nerode import Dfa, nerode, reverse_nerode
from .relcalc import BoolRel
from . import selftest as _selftest_mod

__all__ = [
    "ParseError",
    "parse_nfa",
    "format_nfa",
    "parse_rel",
    "format_rel",
    "format_dfa",
    "main",
]


class ParseError(ValueError):
    """Input file rejected; carries the 1-based offending line number."""

    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line
        self.reason = message


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_state(token: str, n: int, source: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(source, lineno, f"expected a state index, got {token!r}")
    if not 0 <= value < n:
        raise ParseError(
            source, lineno, f"state index {value} out of range for {n} states"
        )
    return value


def parse_nfa(text: str, source: str = "<string>") -> Nfa:
    """Parse the automaton text format; raises ParseError with a line number."""
    lines = list(_meaningful_lines(text))
    pos = 0

    def take(section: str):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(source, len(text.splitlines()) + 1,
                             f"missing section {section!r}")
        lineno, line = lines[pos]
        fields = line.split()
        if fields[0] != section:
            raise ParseError(
                source, lineno,
                f"expected section {section!r}, got {fields[0]!r}",
            )
        pos += 1
        return lineno, fields[1:]

    lineno, fields = take("states")
    if len(fields) != 1:
        raise ParseError(source, lineno, "states takes exactly one count")
    try:
        n = int(fields[0])
    except ValueError:
        raise ParseError(source, lineno, f"bad state count {fields[0]!r}")
    if n < 1:
        raise ParseError(source, lineno, "state count must be at least 1")

    lineno, symbols = take("alphabet")
    if not symbols:
        raise ParseError(source, lineno, "alphabet must list at least one symbol")
    if len(set(symbols)) != len(symbols):
        raise ParseError(source, lineno, "duplicate alphabet symbol")
    for sym in symbols:
        if ":" in sym:
            raise ParseError(source, lineno, f"symbol {sym!r} may not contain ':'")

    lineno, fields = take("initial")
    initial = [_parse_state(tok, n, source, lineno) for tok in fields]
    lineno, fields = take("terminal")
    terminal = [_parse_state(tok, n, source, lineno) for tok in fields]

    transitions = {x: [] for x in symbols}
    seen = set()
    while pos < len(lines):
        lineno, line = lines[pos]
        pos += 1
        first = line.split()[0]
        if first in ("states", "alphabet", "initial", "terminal"):
            raise ParseError(source, lineno, f"duplicate section {first!r}")
        head, colon, rest = line.partition(":")
        head = head.strip()
        if not colon:
            raise ParseError(
                source, lineno, f"expected a transition line, got {line!r}"
            )
        if head not in transitions:
            raise ParseError(source, lineno, f"unknown symbol {head!r}")
        if head in seen:
            raise ParseError(
                source, lineno, f"duplicate transitions for symbol {head!r}"
            )
        seen.add(head)
        for token in rest.split():
            src, arrow, dst = token.partition("->")
            if arrow != "->":
                raise ParseError(
                    source, lineno, f"bad transition {token!r}, expected src->dst"
                )
            transitions[head].append(
                (
                    _parse_state(src, n, source, lineno),
                    _parse_state(dst, n, source, lineno),
                )
            )

    delta = {
        x: BoolRel.from_pairs(n, n, pairs) for x, pairs in transitions.items()
    }
    sigma = [0] * n
    for q in initial:
        sigma[q] = 1
    tau = [0] * n
    for q in terminal:
        tau[q] = 1
    return Nfa(n, symbols, delta, sigma, tau)


def format_nfa(a: Nfa) -> str:
    """Canonical text: symbols in declaration order, transitions sorted."""
    out = [f"states {a.n}"]
    out.append("alphabet " + " ".join(a.alphabet))
    out.append(
        "initial" + "".join(f" {q}" for q in a.sigma.indices())
    )
    out.append(
        "terminal" + "".join(f" {q}" for q in a.tau.indices())
    )
    for x in a.alphabet:
        pairs = sorted(a.delta[x].pairs())
        out.append(
            f"{x}:" + "".join(f" {s}->{d}" for s, d in pairs)
        )
    return "\n".join(out) + "\n"


def format_dfa(d: Dfa) -> str:
    """Deterministic automaton in the automaton format, each state carrying
    a ``subset:`` comment naming the source states it stands for."""
    out = [f"states {d.m}"]
    out.append("alphabet " + " ".join(d.alphabet))
    out.append(f"initial {d.start}")
    out.append(
        "terminal" + "".join(f" {q}" for q in range(d.m) if d.final[q])
    )
    for q in range(d.m):
        members = " ".join(str(i) for i in d.subset_of[q].indices()) or "(empty)"
        out.append(f"# subset: {q} = {members}")
    for k, x in enumerate(d.alphabet):
        pairs = sorted((q, d.next[q][k]) for q in range(d.m))
        out.append(f"{x}:" + "".join(f" {s}->{t}" for s, t in pairs))
    return "\n".join(out) + "\n"


def parse_rel(text: str, source: str = "<string>") -> BoolRel:
    lines = list(_meaningful_lines(text))
    if not lines:
        raise ParseError(source, 1, "missing 'rows cols' header")
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(source, lineno, "header must be 'rows cols'")
    try:
        rows, cols = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(source, lineno, f"bad header {header!r}")
    if rows < 1 or cols < 1:
        raise ParseError(source, lineno, "dimensions must be positive")
    if len(lines) - 1 != rows:
        raise ParseError(source, lineno, f"expected {rows} rows, got {len(lines) - 1}")
    masks = []
    for lineno, line in lines[1:]:
        row = line.replace(" ", "")
        if len(row) != cols or set(row) - {"0", "1"}:
            raise ParseError(
                source, lineno, f"expected {cols} characters of 0/1, got {line!r}"
            )
        masks.append(sum(1 << j for j, c in enumerate(row) if c == "1"))
    return BoolRel(rows, cols, masks)


def format_rel(r: BoolRel) -> str:
    return f"{r.rows} {r.cols}\n" + r.to_text() + "\n"


def _load_nfa(path: str) -> Nfa:
    with open(path, encoding="utf-8") as handle:
        return parse_nfa(handle.read(), source=path)


def _load_rel(path: str) -> BoolRel:
    with open(path, encoding="utf-8") as handle:
        return parse_rel(handle.read(), source=path)


_GREATEST = {
    "fb": greatest_forward_bisim,
    "bb": greatest_backward_bisim,
    "bfb": greatest_backward_forward_bisim,
    "fbb": greatest_forward_backward_bisim,
    "wfs": greatest_weak_forward_sim,
    "wfb": greatest_weak_forward_bisim,
    "wbb": greatest_weak_backward_bisim,
}


def _cmd_bisim(args) -> int:
    a = _load_nfa(args.left)
    b = _load_nfa(args.right)
    report = _GREATEST[args.kind](a, b)
    if report.relation is None:
        print("NONE")
        for name in report.failure:
            print(f"violated: {name}")
        return 1
    print(report.relation.to_text())
    for flag in report.flags:
        print(f"# flag: {flag}")
    return 0


def _cmd_check(args) -> int:
    a = _load_nfa(args.left)
    b = _load_nfa(args.right)
    phi = _load_rel(args.relation)
    result = check(BisimKind(args.kind), a, b, phi)
    for name, holds in result.conditions:
        print(f"{'PASS' if holds else 'FAIL'} {name}")
    print("OK" if result.ok else "VIOLATED")
    return 0 if result.ok else 1


def _cmd_equiv(args) -> int:
    a = _load_nfa(args.left)
    b = _load_nfa(args.right)
    if args.mode == "fb":
        verdict = equivalence.fb_equivalent(a, b)
    elif args.mode == "wfb":
        verdict = equivalence.wfb_equivalent(a, b)
    else:
        verdict = equivalence.language_equivalent(a, b, args.maxlen)
    if verdict.equivalent:
        print("EQUIVALENT")
        if args.mode in ("fb", "wfb"):
            print(verdict.witness.relation.to_text())
        return 0
    print("NOT-EQUIVALENT")
    if args.mode == "lang" and verdict.witness is not None:
        word = " ".join(verdict.witness) if verdict.witness else "eps"
        print(f"witness: {word}")
    return 1


def _cmd_reduce(args) -> int:
    a = _load_nfa(args.automaton)
    sys.stdout.write(format_nfa(equivalence.reduce(a, args.mode)))
    return 0


def _cmd_determinize(args) -> int:
    a = _load_nfa(args.automaton)
    dfa = reverse_nerode(a) if args.reverse else nerode(a)
    sys.stdout.write(format_dfa(dfa))
    return 0


def _cmd_gen(args) -> int:
    symbols = [s for s in args.alphabet.split(",") if s]
    if not symbols:
        print("error: alphabet must list at least one symbol", file=sys.stderr)
        return 2
    try:
        a = random_nfa(args.states, symbols, args.density, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(format_nfa(a))
    return 0


def _cmd_selftest(args) -> int:
    return _selftest_mod.run(
        max_states=args.states,
        seed=args.seed,
        trials=args.trials,
        out=sys.stdout,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfabisim",
        description="Bisimulation-based equivalence and reduction of NFAs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bisim", help="greatest (bi)simulation between two automata")
    p.add_argument("--kind", required=True, choices=sorted(_GREATEST))
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_bisim)

    p = sub.add_parser("check", help="test a relation against a definition")
    p.add_argument(
        "--kind", required=True, choices=[k.value for k in BisimKind]
    )
    p.add_argument("--relation", required=True)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("equiv", help="decide equivalence of two automata")
    p.add_argument("--mode", required=True, choices=["fb", "wfb", "lang"])
    p.add_argument("--maxlen", type=int, default=6)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("reduce", help="factor out a greatest equivalence")
    p.add_argument(
        "--mode", required=True, choices=list(equivalence.REDUCTION_MODES)
    )
    p.add_argument("automaton")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("determinize", help="accessible subset construction")
    p.add_argument("--reverse", action="store_true")
    p.add_argument("automaton")
    p.set_defaults(func=_cmd_determinize)

    p = sub.add_parser("gen", help="seeded random automaton")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--alphabet", default="x,y")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("selftest", help="randomized property suite")
    p.add_argument("--states", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
