"""Randomized property battery backing the ``selftest`` subcommand.

Each trial draws a seeded pair of automata and replays the core guarantees:
duality of the four strong algorithms, partial uniformity of accepted
greatest relations, language preservation of every reduction mode, agreement
of the two subset constructions, and (on small enough pairs) agreement of the
fixpoint algorithms with brute-force enumeration over all candidate
relations.  Output is buffered per trial and emitted in trial order.
"""

from __future__ import annotations

import random
import sys

from .automaton import bounded_language, random_nfa, reverse, tau_u
from .bisim import (
    BisimKind,
    check,
    greatest_backward_bisim,
    greatest_backward_forward_bisim,
    greatest_forward_backward_bisim,
    greatest_forward_bisim,
    greatest_weak_forward_bisim,
    greatest_weak_forward_sim,
    reachable_terminal_pairs,
)
from .equivalence import REDUCTION_MODES, reduce
from .nerode import dfa_isomorphic, nerode, reverse_nerode
from .relcalc import BoolRel, is_partial_uniform, rel_vec, union

__all__ = ["run", "enumerate_greatest", "LANGUAGE_DEPTH"]

LANGUAGE_DEPTH = 6


def enumerate_greatest(kind: BisimKind, a, b):
    """Union of every nonempty relation passing the definition check.

    Brute force over all 2^(|A|*|B|) candidates; intended for |A|*|B| <= 9.
    Returns None when nothing passes.
    """
    best = None
    for code in range(1, 1 << a.n * b.n):
        masks = [code >> a_i * b.n & (1 << b.n) - 1 for a_i in range(a.n)]
        phi = BoolRel(a.n, b.n, masks)
        if check(kind, a, b, phi).ok:
            best = phi if best is None else union(best, phi)
    return best


def _check_duality(a, b, problems):
    fwd = greatest_forward_bisim(reverse(a), reverse(b))
    bwd = greatest_backward_bisim(a, b)
    if bwd.relation != fwd.relation:
        problems.append("backward dual relation mismatch")
    fbb = greatest_forward_backward_bisim(a, b)
    bfb = greatest_backward_forward_bisim(reverse(a), reverse(b))
    if fbb.relation != bfb.relation:
        problems.append("forward-backward dual relation mismatch")


def _check_uniformity(a, b, problems):
    for name, rep in (
        ("fb", greatest_forward_bisim(a, b)),
        ("wfb", greatest_weak_forward_bisim(a, b)),
    ):
        if rep.relation is not None and not is_partial_uniform(rep.relation):
            problems.append(f"accepted {name} relation is not partial-uniform")


def _check_reduction(a, problems):
    reference = set(bounded_language(a, LANGUAGE_DEPTH))
    for mode in REDUCTION_MODES:
        reduced = reduce(a, mode)
        if set(bounded_language(reduced, LANGUAGE_DEPTH)) != reference:
            problems.append(f"{mode} reduction changed the bounded language")


def _check_determinization(a, problems):
    if dfa_isomorphic(reverse_nerode(a), nerode(reverse(a))) is None:
        problems.append("reverse subset construction mismatch")
    dfa = nerode(a)
    if set(dfa.bounded_language(LANGUAGE_DEPTH)) != set(
        bounded_language(a, LANGUAGE_DEPTH)
    ):
        problems.append("determinization changed the bounded language")


def _check_oracles(a, b, problems):
    for kind, algorithm in (
        (BisimKind.FORWARD_BISIM, greatest_forward_bisim),
        (BisimKind.BACKWARD_FORWARD_BISIM, greatest_backward_forward_bisim),
    ):
        expected = enumerate_greatest(kind, a, b)
        got = algorithm(a, b).relation
        if got is not None and got.is_empty():
            got = None
        if expected != got:
            problems.append(f"{kind.value} disagrees with exhaustive enumeration")


def right_language_table(a, depth):
    """Bounded right language per state, enumerated word by word."""
    table = [set() for _ in range(a.n)]
    words = [()]
    for _ in range(depth + 1):
        next_words = []
        for u in words:
            vec = tau_u(a, u)
            for i in vec.indices():
                table[i].add(u)
            next_words.extend(u + (x,) for x in a.alphabet)
        words = next_words
    return table


def _check_weak_sim(a, b, problems):
    # Words no longer than the pair count reach every distinct vector pair,
    # so the bounded right languages below decide membership exactly.
    depth = len(reachable_terminal_pairs(a, b)) - 1
    if depth > 8:
        return
    langs_a = right_language_table(a, depth)
    langs_b = right_language_table(b, depth)
    oracle = BoolRel.from_bits(
        [[1 if langs_a[i] <= langs_b[j] else 0 for j in range(b.n)]
         for i in range(a.n)]
    )
    rep = greatest_weak_forward_sim(a, b)
    if rep.relation is not None and rep.relation != oracle:
        problems.append("weak simulation disagrees with the language oracle")
    if rep.relation is None and a.sigma.issubset(rel_vec(oracle, b.sigma)):
        problems.append("weak simulation rejected although the oracle accepts")


def run(max_states: int = 6, seed: int = 0, trials: int = 25, out=None) -> int:
    """Run the battery; returns 0 when every trial passes, 1 otherwise."""
    out = out or sys.stdout
    rng = random.Random(seed)
    failures = 0
    for trial in range(trials):
        na = rng.randint(1, max_states)
        nb = rng.randint(1, max_states)
        density = rng.choice((0.15, 0.3, 0.5))
        a = random_nfa(na, ("x", "y"), density, rng.randrange(1 << 30))
        b = random_nfa(nb, ("x", "y"), density, rng.randrange(1 << 30))
        problems = []
        _check_duality(a, b, problems)
        _check_uniformity(a, b, problems)
        _check_reduction(a, problems)
        _check_determinization(a, problems)
        _check_weak_sim(a, b, problems)
        if na * nb <= 9:
            _check_oracles(a, b, problems)
        if problems:
            failures += 1
            for p in problems:
                out.write(f"trial {trial:3d}: FAIL {p}\n")
        else:
            out.write(f"trial {trial:3d}: ok ({na}x{nb} states)\n")
    out.write(
        f"selftest: {trials - failures}/{trials} trials passed"
        f" (seed {seed}, max states {max_states})\n"
    )
    return 0 if failures == 0 else 1
