"""Emptiness deciders.

Two-way machines are read-once, so every cell a run touches is fresh and
can carry whatever symbol the run wants.  :func:`emptiness_2w` exploits that
with a closure over ``(state, border status)`` pairs.

Unary three-way machines are flattened onto their first row
(:func:`to_one_dim`), stripped of stay moves (:func:`eliminate_stay`) and
searched by length.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .core import (
    BORDER,
    AlphabetError,
    Automaton2D,
    ClassError,
    Direction,
    OneDimTwoWayNFA,
    Step,
    Ways,
    Word2D,
)
from .run import membership

UNARY_BOUND_CAP = 100_000


class BorderStatus(enum.Enum):
    INTERIOR = "Interior"
    ON_RIGHT_BORDER = "OnRightBorder"
    ON_BOTTOM_BORDER = "OnBottomBorder"
    AT_CORNER = "AtCorner"


class Verdict(enum.Enum):
    EMPTY = "EMPTY"
    NONEMPTY = "NONEMPTY"
    EMPTY_UP_TO_BOUND = "EMPTY-UP-TO"


@dataclass(frozen=True)
class EmptinessVerdict:
    kind: Verdict
    witness: Word2D | None = None
    length: int | None = None
    bound: int | None = None

    @property
    def empty(self) -> bool:
        return self.kind is not Verdict.NONEMPTY


# -- two-way machines ------------------------------------------------------------

def _successors_2w(a: Automaton2D, q: str, status: BorderStatus):
    """Yield ``(symbol, direction, target, new_status)`` for one abstract step."""
    if status is BorderStatus.INTERIOR:
        for s in a.alphabet:
            for p, d in a.moves(q, s):
                yield s, d, p, BorderStatus.INTERIOR
                if d is Direction.R:
                    yield s, d, p, BorderStatus.ON_RIGHT_BORDER
                else:
                    yield s, d, p, BorderStatus.ON_BOTTOM_BORDER
    elif status is BorderStatus.ON_RIGHT_BORDER:
        for p, d in a.moves(q, BORDER):
            if d is Direction.D:
                yield BORDER, d, p, BorderStatus.ON_RIGHT_BORDER
                yield BORDER, d, p, BorderStatus.AT_CORNER
    elif status is BorderStatus.ON_BOTTOM_BORDER:
        for p, d in a.moves(q, BORDER):
            if d is Direction.R:
                yield BORDER, d, p, BorderStatus.ON_BOTTOM_BORDER
                yield BORDER, d, p, BorderStatus.AT_CORNER


def _reconstruct(a: Automaton2D, path) -> Word2D:
    # path: list of (symbol, direction, status_after)
    r, c = 1, 1
    cells = {}
    positions = [(1, 1, BorderStatus.INTERIOR)]
    for symbol, d, status in path:
        if positions[-1][2] is BorderStatus.INTERIOR:
            cells[(r, c)] = symbol
        dr, dc = d.delta
        r, c = r + dr, c + dc
        positions.append((r, c, status))
    fixed_rows = [pr for pr, _, st in positions
                  if st in (BorderStatus.ON_BOTTOM_BORDER, BorderStatus.AT_CORNER)]
    fixed_cols = [pc for _, pc, st in positions
                  if st in (BorderStatus.ON_RIGHT_BORDER, BorderStatus.AT_CORNER)]
    rows = fixed_rows[0] - 1 if fixed_rows else max(pr for pr, _, _ in positions)
    cols = fixed_cols[0] - 1 if fixed_cols else max(pc for _, pc, _ in positions)
    pad = a.alphabet[0]
    return Word2D(tuple(
        tuple(cells.get((i, j), pad) for j in range(1, cols + 1))
        for i in range(1, rows + 1)))


def emptiness_2w(a: Automaton2D) -> EmptinessVerdict:
    """Decide emptiness of a two-way machine in time polynomial in ``|Q|*|Sigma|``."""
    if a.ways is not Ways.TWO:
        raise ClassError("emptiness_2w needs a two-way automaton")
    if a.initial == a.accept:
        return EmptinessVerdict(Verdict.NONEMPTY, witness=Word2D.unary(1, 1, a.alphabet[0]))
    start = (a.initial, BorderStatus.INTERIOR)
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, status = node
        for symbol, d, p, new_status in _successors_2w(a, q, status):
            nxt = (p, new_status)
            if p == a.accept:
                path = [(symbol, d, new_status)]
                cur = node
                while parent[cur] is not None:
                    prev, step_info = parent[cur]
                    path.append(step_info)
                    cur = prev
                path.reverse()
                witness = _reconstruct(a, path)
                if not membership(a, witness):
                    raise AssertionError("reconstructed witness is not accepted")
                return EmptinessVerdict(Verdict.NONEMPTY, witness=witness)
            if nxt not in parent:
                parent[nxt] = (node, (symbol, d, new_status))
                queue.append(nxt)
    return EmptinessVerdict(Verdict.EMPTY)


# -- unary three-way machines ----------------------------------------------------

def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _check_unary_3w(a: Automaton2D) -> None:
    if a.ways is not Ways.THREE:
        raise ClassError("expected a three-way automaton")
    if len(a.alphabet) != 1:
        raise AlphabetError("expected a unary alphabet")


def to_one_dim(a: Automaton2D) -> OneDimTwoWayNFA:
    """Flatten a unary three-way machine onto a one-dimensional two-way NFA.

    Downward moves become stay moves.  A downward move may also be the one
    that drops onto the bottom ``#`` row; for each such target state there is
    a bottom copy that reads every cell as ``#`` and can no longer move down.
    The result accepts ``a^n`` iff ``a`` accepts some ``m x n`` word.
    """
    _check_unary_3w(a)
    sym = a.alphabet[0]
    taken = set(a.states)
    bottom: dict[str, str] = {}
    delta: dict[tuple[str, str], list[tuple[str, Step]]] = {}
    horiz = {Direction.L: Step.LEFT, Direction.R: Step.RIGHT}

    def bottom_of(q: str) -> str:
        if q not in bottom:
            bottom[q] = _fresh(f"{q}@bottom", taken)
            pending.append(q)
        return bottom[q]

    pending: list[str] = []
    for q in a.states:
        if q == a.accept:
            continue
        for x in (sym, BORDER):
            out = delta.setdefault((q, x), [])
            for p, d in a.moves(q, x):
                if d is Direction.D:
                    out.append((p, Step.STAY))
                    if p != a.accept:
                        out.append((bottom_of(p), Step.STAY))
                else:
                    out.append((p, horiz[d]))
    while pending:
        q = pending.pop()
        for x in (sym, BORDER):
            out = delta.setdefault((bottom[q], x), [])
            for p, d in a.moves(q, BORDER):
                if d is Direction.D:
                    continue
                target = p if p == a.accept else bottom_of(p)
                out.append((target, horiz[d]))
    states = a.states + tuple(bottom[q] for q in a.states if q in bottom)
    return OneDimTwoWayNFA(states, a.alphabet, delta, a.initial, a.accept, allow_stay=True)


def eliminate_stay(b: OneDimTwoWayNFA) -> OneDimTwoWayNFA:
    """Remove stay moves, using at most one extra state per original state.

    A stay on a real symbol becomes a bounce: step right into a primed copy
    that steps straight back left.  A stay on ``#`` cannot bounce safely (we
    do not know which end we are on), so those chains are folded into their
    eventual non-stay moves.
    """
    symbols = tuple(b.alphabet)
    taken = set(b.states)
    bounce: dict[str, str] = {}
    delta: dict[tuple[str, str], list[tuple[str, Step]]] = {}

    def border_closure(q: str) -> list[str]:
        seen = [q]
        i = 0
        while i < len(seen):
            for p, m in b.moves(seen[i], BORDER):
                if m is Step.STAY and p not in seen:
                    seen.append(p)
            i += 1
        return seen

    for q in b.states:
        if q == b.accept:
            continue
        for x in symbols:
            out = delta.setdefault((q, x), [])
            for p, m in b.moves(q, x):
                if m is not Step.STAY:
                    out.append((p, m))
                elif p == b.accept:
                    out.append((p, Step.RIGHT))
                else:
                    if p not in bounce:
                        bounce[p] = _fresh(f"{p}~", taken)
                    out.append((bounce[p], Step.RIGHT))
        out = delta.setdefault((q, BORDER), [])
        for r in border_closure(q):
            if r == b.accept:
                # one of the two directions is always inside the tape
                out += [(r, Step.LEFT), (r, Step.RIGHT)]
                continue
            out += [(p, m) for p, m in b.moves(r, BORDER) if m is not Step.STAY]
    for p, name in bounce.items():
        for x in symbols + (BORDER,):
            delta[(name, x)] = [(p, Step.LEFT)]
    states = b.states + tuple(bounce[p] for p in b.states if p in bounce)
    return OneDimTwoWayNFA(states, b.alphabet, delta, b.initial, b.accept, allow_stay=False)


class _Segment:
    """Crossing behaviour of a block of identical interior cells.

    ``lr``/``ll`` relate the state entering the block's leftmost cell to the
    state arriving just right/left of the block; ``rr``/``rl`` likewise for
    entering at the rightmost cell.  ``la``/``ra`` hold entry states from
    which the accept state is entered inside the block.
    """

    __slots__ = ("lr", "ll", "rr", "rl", "la", "ra")

    def __init__(self, lr, ll, rr, rl, la, ra):
        self.lr, self.ll, self.rr, self.rl = lr, ll, rr, rl
        self.la, self.ra = la, ra

    def key(self):
        return (self.lr, self.ll, self.rr, self.rl, self.la, self.ra)

    @classmethod
    def single(cls, b: OneDimTwoWayNFA) -> _Segment:
        sym = b.alphabet[0]
        right, left, acc = set(), set(), set()
        for q in b.states:
            if q == b.accept:
                continue
            for p, m in b.moves(q, sym):
                if p == b.accept:
                    acc.add(q)
                elif m is Step.RIGHT:
                    right.add((q, p))
                elif m is Step.LEFT:
                    left.add((q, p))
        right, left, acc = frozenset(right), frozenset(left), frozenset(acc)
        return cls(right, left, right, left, acc, acc)

    def then(self, other: _Segment) -> _Segment:
        """Behaviour of ``self`` immediately followed by ``other``."""
        def adj(rel):
            out: dict = {}
            for s, t in rel:
                out.setdefault(s, []).append(t)
            return out

        x_from_l = (adj(self.ll), adj(self.lr), self.la)
        x_from_r = (adj(self.rl), adj(self.rr), self.ra)
        y_from_l = (adj(other.ll), adj(other.lr), other.la)
        y_from_r = (adj(other.rl), adj(other.rr), other.ra)

        def run(start):
            exits_l, exits_r, accepted = set(), set(), False
            seen = {start}
            todo = [start]
            while todo:
                node = todo.pop()
                block, side, s = node
                if block == "x":
                    back, fwd, acc = x_from_l if side == "l" else x_from_r
                    if s in acc:
                        accepted = True
                    exits_l.update(back.get(s, ()))
                    nxt = [("y", "l", t) for t in fwd.get(s, ())]
                else:
                    back, fwd, acc = y_from_l if side == "l" else y_from_r
                    if s in acc:
                        accepted = True
                    exits_r.update(fwd.get(s, ()))
                    nxt = [("x", "r", t) for t in back.get(s, ())]
                for n in nxt:
                    if n not in seen:
                        seen.add(n)
                        todo.append(n)
            return exits_l, exits_r, accepted

        lr, ll, rr, rl, la, ra = set(), set(), set(), set(), set(), set()
        entries = {s for rel in (self.ll, self.lr) for s, _ in rel} | set(self.la)
        for s in entries:
            el, er, acc = run(("x", "l", s))
            ll.update((s, t) for t in el)
            lr.update((s, t) for t in er)
            if acc:
                la.add(s)
        entries = {s for rel in (other.rl, other.rr) for s, _ in rel} | set(other.ra)
        for s in entries:
            el, er, acc = run(("y", "r", s))
            rl.update((s, t) for t in el)
            rr.update((s, t) for t in er)
            if acc:
                ra.add(s)
        return _Segment(*(frozenset(v) for v in (lr, ll, rr, rl, la, ra)))


def _accepts_with(b: OneDimTwoWayNFA, seg: _Segment) -> bool:
    """Whether ``b`` accepts the unary word whose interior behaves like ``seg``."""
    if b.initial == b.accept:
        return True
    ll, lr, rl, rr = ({}, {}, {}, {})
    for rel, out in ((seg.ll, ll), (seg.lr, lr), (seg.rl, rl), (seg.rr, rr)):
        for s, t in rel:
            out.setdefault(s, []).append(t)
    start = ("in-l", b.initial)
    seen = {start}
    todo = [start]
    while todo:
        where, s = todo.pop()
        nxt = []
        if where == "in-l" or where == "in-r":
            if s in (seg.la if where == "in-l" else seg.ra):
                return True
            back, fwd = (ll, lr) if where == "in-l" else (rl, rr)
            nxt += [("end-l", t) for t in back.get(s, ())]
            nxt += [("end-r", t) for t in fwd.get(s, ())]
        else:
            inward = Step.RIGHT if where == "end-l" else Step.LEFT
            for p, m in b.moves(s, BORDER):
                if m is not inward:
                    continue
                if p == b.accept:
                    return True
                nxt.append(("in-l" if where == "end-l" else "in-r", p))
        for n in nxt:
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return False


def accepted_lengths(b: OneDimTwoWayNFA, bound: int):
    """Yield the accepted unary lengths in ``1..bound`` in increasing order.

    ``b`` must be stay-free.  Once the block behaviour of some length repeats
    that of a shorter one, acceptance is periodic from there on and the
    remaining lengths are filled in without further simulation.
    """
    if b.has_stay():
        raise ValueError("accepted_lengths needs a stay-free machine")
    base = _Segment.single(b)
    seg = base
    first_seen: dict = {}
    verdicts = [False]  # index = length
    for length in range(1, bound + 1):
        key = seg.key()
        if key in first_seen:
            period = length - first_seen[key]
            for n in range(length, bound + 1):
                verdicts.append(verdicts[n - period])
                if verdicts[n]:
                    yield n
            return
        first_seen[key] = length
        verdicts.append(_accepts_with(b, seg))
        if verdicts[length]:
            yield length
        seg = seg.then(base)


def default_unary_bound(a: Automaton2D) -> int:
    flat = to_one_dim(a)
    return min(2 ** (2 * len(flat.states)), UNARY_BOUND_CAP)


def emptiness_unary_3w(a: Automaton2D, bound: int | None = None) -> EmptinessVerdict:
    """Bounded emptiness search for a unary three-way machine.

    Returns the smallest accepted column count (with a full witness word), or
    ``EMPTY-UP-TO`` when no length up to the bound is accepted.
    """
    _check_unary_3w(a)
    flat = to_one_dim(a)
    free = eliminate_stay(flat)
    if bound is None:
        bound = min(2 ** (2 * len(flat.states)), UNARY_BOUND_CAP)
    if bound < 1:
        raise ValueError("bound must be positive")
    for length in accepted_lengths(free, bound):
        max_rows = len(flat.states) * (length + 2) + 1
        for rows in range(1, max_rows + 1):
            w = Word2D.unary(rows, length, a.alphabet[0])
            if membership(a, w):
                return EmptinessVerdict(Verdict.NONEMPTY, witness=w, length=length)
        raise AssertionError(f"length {length} accepted in 1-D but no 2-D witness found")
    return EmptinessVerdict(Verdict.EMPTY_UP_TO_BOUND, bound=bound)
