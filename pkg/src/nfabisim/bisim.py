"""Checkers and greatest-relation algorithms for all ten (bi)simulation kinds.

The strong kinds are decided by a shrinking fixpoint over residuals: start
from the largest relation compatible with the boundary vectors, intersect
away violations symbol by symbol until stable, then test the two covering
conditions that the fixpoint cannot enforce.  The weak kinds intersect arrow
relations over the finitely many reachable boundary-vector pairs instead.

Condition names used in reports:

* ``initial-forward``   -- every initial state of A is related to an initial state of B
* ``initial-backward``  -- every initial state of B is related to an initial state of A
* ``terminal-forward``  -- every terminal state of A is related to a terminal state of B
* ``terminal-backward`` -- every terminal state of B is related to a terminal state of A

plus ``step-*[x]`` and ``*-image`` names for the per-symbol and containment
conditions itemized by :func:`check`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .automaton import Nfa, reverse
from .relcalc import (
    BoolRel,
    BoolVec,
    Partition,
    arrow_left,
    arrow_right,
    biarrow,
    compose,
    intersect,
    inverse,
    rel_vec,
    residual_left,
    residual_right,
    subset_of,
    vec_rel,
)

__all__ = [
    "BisimKind",
    "CheckResult",
    "BisimReport",
    "check",
    "forward_bisim_steps",
    "backward_forward_bisim_steps",
    "greatest_forward_bisim",
    "greatest_backward_forward_bisim",
    "greatest_backward_bisim",
    "greatest_forward_backward_bisim",
    "greatest_fb_equivalence",
    "greatest_bb_equivalence",
    "reachable_terminal_pairs",
    "reachable_initial_pairs",
    "greatest_weak_forward_sim",
    "greatest_weak_forward_bisim",
    "greatest_weak_backward_bisim",
    "wfb_equivalence_bound",
    "wbb_equivalence_bound",
]


class BisimKind(Enum):
    FORWARD_SIM = "fs"
    BACKWARD_SIM = "bs"
    FORWARD_BISIM = "fb"
    BACKWARD_BISIM = "bb"
    BACKWARD_FORWARD_BISIM = "bfb"
    FORWARD_BACKWARD_BISIM = "fbb"
    WEAK_FORWARD_SIM = "wfs"
    WEAK_BACKWARD_SIM = "wbs"
    WEAK_FORWARD_BISIM = "wfb"
    WEAK_BACKWARD_BISIM = "wbb"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a definition check with one entry per defining condition."""

    kind: BisimKind
    ok: bool
    conditions: tuple

    def __bool__(self):
        return self.ok

    def failed(self) -> tuple:
        return tuple(name for name, holds in self.conditions if not holds)


@dataclass(frozen=True)
class BisimReport:
    """Result of a greatest-relation computation.

    Exactly one of ``relation`` and ``failure`` is set.  ``iterations`` counts
    refinement steps for the fixpoint algorithms and explored vector pairs for
    the weak ones.  ``flags`` carries ``relation-is-empty`` when an accepted
    relation has no pairs (possible only with empty initial vectors).
    """

    kind: BisimKind
    relation: BoolRel | None
    iterations: int
    failure: tuple | None = None
    flags: tuple = ()

    def __post_init__(self):
        if (self.relation is None) == (self.failure is None):
            raise ValueError("exactly one of relation and failure must be set")

    @property
    def exists(self) -> bool:
        return self.relation is not None


def _require_same_alphabet(a: Nfa, b: Nfa) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError(
            f"alphabet mismatch: {sorted(a.alphabet)} vs {sorted(b.alphabet)}"
        )


def _require_shape(a: Nfa, b: Nfa, phi: BoolRel) -> None:
    if phi.rows != a.n or phi.cols != b.n:
        raise ValueError(
            f"relation is {phi.rows}x{phi.cols}, expected {a.n}x{b.n}"
        )


# Covering conditions (the ones a greatest-relation report can fail on).

def _initial_forward(a, b, phi):
    return a.sigma.issubset(rel_vec(phi, b.sigma))


def _initial_backward(a, b, phi):
    return b.sigma.issubset(vec_rel(a.sigma, phi))


def _terminal_forward(a, b, phi):
    return a.tau.issubset(rel_vec(phi, b.tau))


def _terminal_backward(a, b, phi):
    return b.tau.issubset(vec_rel(a.tau, phi))


def _strong_conditions(kind, a, b, phi):
    inv = inverse(phi)
    conds = []

    def fwd_steps():
        for x in a.alphabet:
            holds = subset_of(compose(inv, a.delta[x]), compose(b.delta[x], inv))
            conds.append((f"step-forward[{x}]", holds))

    def fwd_steps_rev():
        for x in a.alphabet:
            holds = subset_of(compose(phi, b.delta[x]), compose(a.delta[x], phi))
            conds.append((f"step-forward-rev[{x}]", holds))

    def bwd_steps():
        for x in a.alphabet:
            holds = subset_of(compose(a.delta[x], phi), compose(phi, b.delta[x]))
            conds.append((f"step-backward[{x}]", holds))

    def bwd_steps_rev():
        for x in a.alphabet:
            holds = subset_of(compose(b.delta[x], inv), compose(inv, a.delta[x]))
            conds.append((f"step-backward-rev[{x}]", holds))

    if kind is BisimKind.FORWARD_SIM:
        conds.append(("initial-forward", _initial_forward(a, b, phi)))
        fwd_steps()
        conds.append(("terminal-image", vec_rel(a.tau, phi).issubset(b.tau)))
    elif kind is BisimKind.BACKWARD_SIM:
        conds.append(("initial-image", vec_rel(a.sigma, phi).issubset(b.sigma)))
        bwd_steps()
        conds.append(("terminal-forward", _terminal_forward(a, b, phi)))
    elif kind is BisimKind.FORWARD_BISIM:
        conds.append(("initial-forward", _initial_forward(a, b, phi)))
        fwd_steps()
        conds.append(("terminal-image", vec_rel(a.tau, phi).issubset(b.tau)))
        conds.append(("initial-backward", _initial_backward(a, b, phi)))
        fwd_steps_rev()
        conds.append(("terminal-image-rev", rel_vec(phi, b.tau).issubset(a.tau)))
    elif kind is BisimKind.BACKWARD_BISIM:
        conds.append(("initial-image", vec_rel(a.sigma, phi).issubset(b.sigma)))
        bwd_steps()
        conds.append(("terminal-forward", _terminal_forward(a, b, phi)))
        conds.append(("initial-image-rev", rel_vec(phi, b.sigma).issubset(a.sigma)))
        bwd_steps_rev()
        conds.append(("terminal-backward", _terminal_backward(a, b, phi)))
    elif kind is BisimKind.BACKWARD_FORWARD_BISIM:
        conds.append(("initial-image", vec_rel(a.sigma, phi).issubset(b.sigma)))
        bwd_steps()
        conds.append(("terminal-forward", _terminal_forward(a, b, phi)))
        conds.append(("initial-backward", _initial_backward(a, b, phi)))
        fwd_steps_rev()
        conds.append(("terminal-image-rev", rel_vec(phi, b.tau).issubset(a.tau)))
    elif kind is BisimKind.FORWARD_BACKWARD_BISIM:
        conds.append(("initial-forward", _initial_forward(a, b, phi)))
        fwd_steps()
        conds.append(("terminal-image", vec_rel(a.tau, phi).issubset(b.tau)))
        conds.append(("initial-image-rev", rel_vec(phi, b.sigma).issubset(a.sigma)))
        bwd_steps_rev()
        conds.append(("terminal-backward", _terminal_backward(a, b, phi)))
    else:  # pragma: no cover - guarded by check()
        raise ValueError(f"not a strong kind: {kind}")
    return conds


def _weak_conditions(kind, a, b, phi):
    inv = inverse(phi)
    conds = []
    if kind in (BisimKind.WEAK_FORWARD_SIM, BisimKind.WEAK_FORWARD_BISIM):
        pairs = reachable_terminal_pairs(a, b)
        conds.append(
            (
                "weak-terminal",
                all(vec_rel(ta, phi).issubset(tb) for ta, tb in pairs),
            )
        )
        if kind is BisimKind.WEAK_FORWARD_BISIM:
            conds.append(
                (
                    "weak-terminal-rev",
                    all(vec_rel(tb, inv).issubset(ta) for ta, tb in pairs),
                )
            )
        conds.append(("initial-forward", _initial_forward(a, b, phi)))
        if kind is BisimKind.WEAK_FORWARD_BISIM:
            conds.append(("initial-backward", _initial_backward(a, b, phi)))
    else:
        pairs = reachable_initial_pairs(a, b)
        conds.append(
            (
                "weak-initial",
                all(vec_rel(sa, phi).issubset(sb) for sa, sb in pairs),
            )
        )
        if kind is BisimKind.WEAK_BACKWARD_BISIM:
            conds.append(
                (
                    "weak-initial-rev",
                    all(vec_rel(sb, inv).issubset(sa) for sa, sb in pairs),
                )
            )
        conds.append(("terminal-forward", _terminal_forward(a, b, phi)))
        if kind is BisimKind.WEAK_BACKWARD_BISIM:
            conds.append(("terminal-backward", _terminal_backward(a, b, phi)))
    return conds


_WEAK_KINDS = (
    BisimKind.WEAK_FORWARD_SIM,
    BisimKind.WEAK_BACKWARD_SIM,
    BisimKind.WEAK_FORWARD_BISIM,
    BisimKind.WEAK_BACKWARD_BISIM,
)


def check(kind: BisimKind, a: Nfa, b: Nfa, phi: BoolRel) -> CheckResult:
    """Test a nonempty relation against the defining conditions of a kind."""
    _require_same_alphabet(a, b)
    _require_shape(a, b, phi)
    if phi.is_empty():
        raise ValueError("relation must be nonempty")
    if kind in _WEAK_KINDS:
        conds = _weak_conditions(kind, a, b, phi)
    else:
        conds = _strong_conditions(kind, a, b, phi)
    return CheckResult(kind, all(ok for _, ok in conds), tuple(conds))


def forward_bisim_steps(a: Nfa, b: Nfa) -> list:
    """Shrinking candidate sequence for the greatest forward bisimulation.

    Starts from the terminal-agreement relation and intersects, per symbol,
    both residual bounds until two consecutive relations coincide.  The loop
    also stops as soon as the candidate empties out, since the empty relation
    can only shrink to itself.
    """
    _require_same_alphabet(a, b)
    phi = biarrow(a.tau, b.tau)
    seq = [phi]
    while not phi.is_empty():
        nxt = phi
        for x in a.alphabet:
            bound_rev = inverse(
                residual_left(compose(b.delta[x], inverse(phi)), a.delta[x])
            )
            bound_fwd = residual_left(compose(a.delta[x], phi), b.delta[x])
            nxt = intersect(nxt, intersect(bound_rev, bound_fwd))
        seq.append(nxt)
        if nxt == phi:
            break
        phi = nxt
    return seq


def backward_forward_bisim_steps(a: Nfa, b: Nfa) -> list:
    """Candidate sequence for the greatest backward-forward bisimulation."""
    _require_same_alphabet(a, b)
    phi = intersect(arrow_right(a.sigma, b.sigma), arrow_left(a.tau, b.tau))
    seq = [phi]
    while not phi.is_empty():
        nxt = phi
        for x in a.alphabet:
            bound_bwd = residual_left(compose(a.delta[x], phi), b.delta[x])
            bound_fwd = residual_right(compose(phi, b.delta[x]), a.delta[x])
            nxt = intersect(nxt, intersect(bound_bwd, bound_fwd))
        seq.append(nxt)
        if nxt == phi:
            break
        phi = nxt
    return seq


def _report(kind, phi, iterations, acceptance) -> BisimReport:
    violated = tuple(name for name, ok in acceptance if not ok)
    if violated:
        return BisimReport(kind, None, iterations, failure=violated)
    flags = ("relation-is-empty",) if phi.is_empty() else ()
    return BisimReport(kind, phi, iterations, flags=flags)


def greatest_forward_bisim(a: Nfa, b: Nfa) -> BisimReport:
    """Greatest forward bisimulation, or the violated covering conditions."""
    seq = forward_bisim_steps(a, b)
    phi = seq[-1]
    acceptance = [
        ("initial-forward", _initial_forward(a, b, phi)),
        ("initial-backward", _initial_backward(a, b, phi)),
    ]
    return _report(BisimKind.FORWARD_BISIM, phi, len(seq) - 1, acceptance)


def greatest_backward_forward_bisim(a: Nfa, b: Nfa) -> BisimReport:
    """Greatest backward-forward bisimulation, or the violated conditions."""
    seq = backward_forward_bisim_steps(a, b)
    phi = seq[-1]
    acceptance = [
        ("terminal-forward", _terminal_forward(a, b, phi)),
        ("initial-backward", _initial_backward(a, b, phi)),
    ]
    return _report(BisimKind.BACKWARD_FORWARD_BISIM, phi, len(seq) - 1, acceptance)


# Reversal swaps the roles of the initial and terminal vectors, so failure
# names from a dual run are mapped back to the original automata.
_DUAL_NAME = {
    "initial-forward": "terminal-forward",
    "initial-backward": "terminal-backward",
    "terminal-forward": "initial-forward",
    "terminal-backward": "initial-backward",
}


def _dualize(report: BisimReport, kind: BisimKind) -> BisimReport:
    failure = report.failure
    if failure is not None:
        failure = tuple(_DUAL_NAME[name] for name in failure)
    return BisimReport(
        kind, report.relation, report.iterations, failure, report.flags
    )


def greatest_backward_bisim(a: Nfa, b: Nfa) -> BisimReport:
    """Dual of the forward algorithm, run on the reversed automata."""
    rep = greatest_forward_bisim(reverse(a), reverse(b))
    return _dualize(rep, BisimKind.BACKWARD_BISIM)


def greatest_forward_backward_bisim(a: Nfa, b: Nfa) -> BisimReport:
    rep = greatest_backward_forward_bisim(reverse(a), reverse(b))
    return _dualize(rep, BisimKind.FORWARD_BACKWARD_BISIM)


def _equivalence_of(report: BisimReport, a: Nfa) -> Partition:
    if report.relation is None:  # pragma: no cover - identity always qualifies
        raise AssertionError("self-bisimulation fixpoint was rejected")
    return Partition.from_relation(report.relation)


def greatest_fb_equivalence(a: Nfa) -> Partition:
    """Classes of the greatest forward bisimulation of an automaton with
    itself; the fixpoint is verified to be an equivalence on conversion."""
    return _equivalence_of(greatest_forward_bisim(a, a), a)


def greatest_bb_equivalence(a: Nfa) -> Partition:
    return _equivalence_of(greatest_backward_bisim(a, a), a)


def _synchronized_pairs(va: BoolVec, vb: BoolVec, step) -> list:
    seen = {(va.mask, vb.mask)}
    order = [(va, vb)]
    queue = deque(order)
    while queue:
        xa, xb = queue.popleft()
        for na, nb in step(xa, xb):
            key = (na.mask, nb.mask)
            if key not in seen:
                seen.add(key)
                order.append((na, nb))
                queue.append((na, nb))
    return order


def reachable_terminal_pairs(a: Nfa, b: Nfa) -> list:
    """Every distinct pair of word-indexed terminal vectors, breadth-first.

    Each word u contributes the pair (tau_u of a, tau_u of b); the search
    closes the starting pair under prepending one symbol, so the finite list
    covers all words.
    """
    _require_same_alphabet(a, b)
    return _synchronized_pairs(
        a.tau,
        b.tau,
        lambda xa, xb: (
            (rel_vec(a.delta[x], xa), rel_vec(b.delta[x], xb)) for x in a.alphabet
        ),
    )


def reachable_initial_pairs(a: Nfa, b: Nfa) -> list:
    """Dual of reachable_terminal_pairs, over word-indexed initial vectors."""
    _require_same_alphabet(a, b)
    return _synchronized_pairs(
        a.sigma,
        b.sigma,
        lambda xa, xb: (
            (vec_rel(xa, a.delta[x]), vec_rel(xb, b.delta[x])) for x in a.alphabet
        ),
    )


def _intersect_over_pairs(pairs, build) -> BoolRel:
    acc = None
    for ta, tb in pairs:
        rel = build(ta, tb)
        acc = rel if acc is None else intersect(acc, rel)
    return acc


def greatest_weak_forward_sim(a: Nfa, b: Nfa) -> BisimReport:
    """Greatest weak forward simulation: states related when every
    terminal-vector membership of the left one carries over to the right."""
    pairs = reachable_terminal_pairs(a, b)
    lam = _intersect_over_pairs(pairs, arrow_right)
    acceptance = [("initial-forward", _initial_forward(a, b, lam))]
    return _report(BisimKind.WEAK_FORWARD_SIM, lam, len(pairs), acceptance)


def greatest_weak_forward_bisim(a: Nfa, b: Nfa) -> BisimReport:
    """Greatest weak forward bisimulation: memberships must agree exactly."""
    pairs = reachable_terminal_pairs(a, b)
    mu = _intersect_over_pairs(pairs, biarrow)
    acceptance = [
        ("initial-forward", _initial_forward(a, b, mu)),
        ("initial-backward", _initial_backward(a, b, mu)),
    ]
    return _report(BisimKind.WEAK_FORWARD_BISIM, mu, len(pairs), acceptance)


def greatest_weak_backward_bisim(a: Nfa, b: Nfa) -> BisimReport:
    rep = greatest_weak_forward_bisim(reverse(a), reverse(b))
    return _dualize(rep, BisimKind.WEAK_BACKWARD_BISIM)


def wfb_equivalence_bound(a: Nfa) -> Partition:
    """Greatest weak-forward-bisimulation equivalence: states grouped by
    agreeing on every reachable terminal vector.  Every equivalence below it
    is again a weak forward bisimulation; none above it is."""
    pairs = reachable_terminal_pairs(a, a)
    rel = _intersect_over_pairs(pairs, biarrow)
    return Partition.from_relation(rel)


def wbb_equivalence_bound(a: Nfa) -> Partition:
    return wfb_equivalence_bound(reverse(a))
