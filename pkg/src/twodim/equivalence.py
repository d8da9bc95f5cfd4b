"""Bounded and exact language comparison for two-way machines, and state reduction."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    BORDER,
    AlphabetError,
    Automaton2D,
    AutomatonError,
    ClassError,
    Ways,
    Word2D,
    accept_all,
    shapes,
)
from .run import explore, membership

DEFAULT_BUDGET = 10_000_000


class Verdict(enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    EQUIVALENT_UP_TO_BOUND = "EQUIVALENT-UP-TO"
    INFEASIBLE = "INFEASIBLE"


class Side(enum.Enum):
    SYMMETRIC = "symmetric"
    A_MINUS_B = "a-minus-b"


@dataclass(frozen=True)
class PumpingBound:
    m: int
    n: int
    sigma: int

    @property
    def z(self) -> int:
        return self.m * self.n * self.sigma ** 2 + 1

    @property
    def f_z(self) -> int:
        z = self.z
        return z * z * (z * z + z - 1)


@dataclass(frozen=True)
class EquivalenceVerdict:
    kind: Verdict
    max_rows: int
    max_cols: int
    witness: Word2D | None = None
    accepted_by_a: bool | None = None
    accepted_by_b: bool | None = None
    f_z: int | None = None
    calls: int = 0


def _same_alphabet(a: Automaton2D, b: Automaton2D) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetError("automata have different alphabets")


def pumping_bound(a: Automaton2D, b: Automaton2D) -> PumpingBound:
    """The dimension bound below which a difference word must exist, if any does."""
    _same_alphabet(a, b)
    return PumpingBound(len(a.states), len(b.states), len(a.alphabet))


def candidate_count(sigma: int, max_rows: int, max_cols: int, cap: int | None = None) -> int:
    """Number of words with at most the given dimensions.

    With ``cap`` set, stops summing once the total exceeds it and returns the
    partial sum (which is then already larger than ``cap``).
    """
    if sigma == 1:
        return max_rows * max_cols
    total = 0
    for r in range(1, max_rows + 1):
        for c in range(1, max_cols + 1):
            total += sigma ** (r * c)
            if cap is not None and total > cap:
                return total
    return total


class _Uniform:
    """Every cell holds the same symbol; avoids building huge unary words."""

    def __init__(self, symbol: str):
        self.symbol = symbol

    def __getitem__(self, idx: int) -> str:
        return self.symbol


def bounded_difference(
    a: Automaton2D,
    b: Automaton2D,
    max_rows: int,
    max_cols: int,
    side: Side = Side.SYMMETRIC,
    budget: int = DEFAULT_BUDGET,
) -> EquivalenceVerdict:
    """First word (by area, rows, then content) in the requested difference.

    Words are visited in lexicographic order, but a run that never looked
    past cell ``k`` answers for every word sharing cells ``0..k``; such
    blocks are skipped in one go.  The reported counterexample is the same
    one a plain enumeration would find.
    """
    _same_alphabet(a, b)
    if max_rows < 1 or max_cols < 1:
        raise ValueError("bounds must be at least 1")
    if budget < 1:
        raise ValueError("budget must be positive")
    alphabet = a.alphabet
    sigma = len(alphabet)
    if 2 * candidate_count(sigma, max_rows, max_cols, cap=budget // 2) > budget:
        return EquivalenceVerdict(Verdict.INFEASIBLE, max_rows, max_cols)
    calls = 0
    uniform = _Uniform(alphabet[0])
    for rows, cols in shapes(max_rows, max_cols):
        n = rows * cols
        digits = [0] * n
        while True:
            cells = uniform if sigma == 1 else tuple(alphabet[d] for d in digits)
            in_a, read_a = explore(a, rows, cols, cells)
            in_b, read_b = explore(b, rows, cols, cells)
            calls += 2
            hit = in_a and not in_b if side is Side.A_MINUS_B else in_a != in_b
            if hit:
                flat = tuple(alphabet[d] for d in digits)
                w = Word2D(tuple(flat[r * cols:(r + 1) * cols] for r in range(rows)))
                if membership(a, w) != in_a or membership(b, w) != in_b:
                    raise AssertionError("counterexample failed re-validation")
                return EquivalenceVerdict(Verdict.COUNTEREXAMPLE, max_rows, max_cols,
                                          witness=w, accepted_by_a=in_a,
                                          accepted_by_b=in_b, calls=calls)
            k = max(read_a, read_b)
            if k < 0:
                break
            # advance the odometer at position k, clearing everything after it
            for i in range(k + 1, n):
                digits[i] = 0
            while k >= 0:
                digits[k] += 1
                if digits[k] < sigma:
                    break
                digits[k] = 0
                k -= 1
            if k < 0:
                break
    return EquivalenceVerdict(Verdict.EQUIVALENT_UP_TO_BOUND, max_rows, max_cols, calls=calls)


def _require_2dfa_2w(*machines: Automaton2D) -> None:
    for m in machines:
        if m.ways is not Ways.TWO or not m.deterministic:
            raise ClassError(f"expected a 2DFA-2W, got {m.cls}")


def _exact(a, b, side, budget) -> EquivalenceVerdict:
    _require_2dfa_2w(a, b)
    f = pumping_bound(a, b).f_z
    v = bounded_difference(a, b, f, f, side=side, budget=budget)
    kind = Verdict.EQUIVALENT if v.kind is Verdict.EQUIVALENT_UP_TO_BOUND else v.kind
    return EquivalenceVerdict(kind, f, f, v.witness, v.accepted_by_a, v.accepted_by_b,
                              f_z=f, calls=v.calls)


def decide_equivalence(a: Automaton2D, b: Automaton2D,
                       budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    """Exact equivalence for deterministic two-way machines.

    Searches every word up to ``f(z) x f(z)``; ``INFEASIBLE`` when that
    search would exceed ``budget`` membership calls.
    """
    return _exact(a, b, Side.SYMMETRIC, budget)


def decide_inclusion(a: Automaton2D, b: Automaton2D,
                     budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    """Exact ``L(a) <= L(b)``; ``EQUIVALENT`` here means the inclusion holds."""
    return _exact(a, b, Side.A_MINUS_B, budget)


def universality(a: Automaton2D, budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    _require_2dfa_2w(a)
    return decide_equivalence(a, accept_all(a.alphabet), budget)


# -- state reduction -------------------------------------------------------------

def _live_states(a: Automaton2D) -> set[str]:
    back: dict[str, set[str]] = {}
    for q, _, p, _ in a.transitions():
        back.setdefault(p, set()).add(q)
    live = {a.accept}
    todo = [a.accept]
    while todo:
        for q in back.get(todo.pop(), ()):
            if q not in live:
                live.add(q)
                todo.append(q)
    return live


def minimize(a: Automaton2D) -> Automaton2D:
    """Merge indistinguishable states of a 2DFA-2W.

    States that cannot reach the accept state in the transition graph act
    like an explicit dead state and are dropped (their incoming transitions
    become undefined).  Two live states stay apart when, on some symbol, one
    is defined and the other is not, when they move in different
    directions, or when their successors are already apart.
    """
    _require_2dfa_2w(a)
    live = _live_states(a)
    if a.initial not in live:
        return Automaton2D(("q0", "acc"), a.alphabet, a.cls, {}, "q0", "acc")
    states = [q for q in a.states if q in live]
    symbols = a.alphabet + (BORDER,)

    def move(q, s):
        for p, d in a.moves(q, s):
            if p in live:
                return p, d
        return None

    table = {(q, s): move(q, s) for q in states for s in symbols}
    index = {q: i for i, q in enumerate(states)}
    apart = set()
    for i, q in enumerate(states):
        for r in states[i + 1:]:
            if (q == a.accept) != (r == a.accept):
                apart.add((q, r))
    changed = True
    while changed:
        changed = False
        for i, q in enumerate(states):
            for r in states[i + 1:]:
                if (q, r) in apart:
                    continue
                for s in symbols:
                    tq, tr = table[q, s], table[r, s]
                    if tq is None and tr is None:
                        continue
                    if tq is None or tr is None or tq[1] is not tr[1]:
                        split = True
                    else:
                        pq, pr = sorted((tq[0], tr[0]), key=index.__getitem__)
                        split = (pq, pr) in apart
                    if split:
                        apart.add((q, r))
                        changed = True
                        break
    rep = {}
    for q in states:
        rep[q] = next(r for r in states
                      if r == q or (min(r, q, key=index.__getitem__),
                                    max(r, q, key=index.__getitem__)) not in apart)
    # keep only representatives reachable from the initial state
    start = rep[a.initial]
    reach = [start]
    seen = {start}
    while reach:
        q = reach.pop()
        for s in symbols:
            t = table.get((q, s))
            if t and rep[t[0]] not in seen:
                seen.add(rep[t[0]])
                reach.append(rep[t[0]])
    new_states = [q for q in states if q in seen and rep[q] == q]
    delta = {}
    for q in new_states:
        if q == a.accept:
            continue
        for s in symbols:
            t = table[q, s]
            if t is not None:
                delta[(q, s)] = ((rep[t[0]], t[1]),)
    accept = rep[a.accept]
    if accept not in seen:
        raise AutomatonError("accept state vanished during minimisation")
    return Automaton2D(tuple(new_states), a.alphabet, a.cls, delta, start, accept)
