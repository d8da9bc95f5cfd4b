"""Row and column projections, and the composite-number gadget."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import (
    BORDER,
    Automaton2D,
    AutomatonClass,
    AutomatonError,
    ClassError,
    Direction,
    OneDimTwoWayNFA,
    ParseError,
    Step,
    Ways,
    shapes,
    transpose,
)
from .emptiness import to_one_dim
from .equivalence import DEFAULT_BUDGET, candidate_count
from .run import explore


@dataclass(frozen=True)
class OneDimNFA:
    """A one-way NFA with optional epsilon moves and a set of accepting states."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], tuple[str, ...]]
    initial: str
    accepts: frozenset[str]
    epsilon: Mapping[str, tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepts", frozenset(self.accepts))
        object.__setattr__(self, "delta", {k: tuple(dict.fromkeys(v))
                                           for k, v in self.delta.items() if v})
        object.__setattr__(self, "epsilon", {k: tuple(dict.fromkeys(v))
                                             for k, v in (self.epsilon or {}).items() if v})

    def closure(self, states: Iterable[str]) -> frozenset[str]:
        seen = set(states)
        todo = list(seen)
        while todo:
            for p in self.epsilon.get(todo.pop(), ()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def accepts_word(self, word: Sequence[str]) -> bool:
        current = self.closure([self.initial])
        for s in word:
            current = self.closure(p for q in current for p in self.delta.get((q, s), ()))
            if not current:
                return False
        return bool(current & self.accepts)

    def language(self, max_len: int) -> set[tuple[str, ...]]:
        """All accepted words of length at most ``max_len``."""
        return {w for n in range(max_len + 1)
                for w in itertools.product(self.alphabet, repeat=n)
                if self.accepts_word(w)}


def eliminate_epsilon(b: OneDimNFA) -> OneDimNFA:
    if not b.epsilon:
        return b
    delta: dict[tuple[str, str], list[str]] = {}
    accepts = set()
    for q in b.states:
        cl = b.closure([q])
        if cl & b.accepts:
            accepts.add(q)
        for s in b.alphabet:
            targets = [p for r in b.states if r in cl for p in b.delta.get((r, s), ())]
            if targets:
                delta[(q, s)] = targets
    return OneDimNFA(b.states, b.alphabet, delta, b.initial, accepts)


def trim(b: OneDimNFA) -> OneDimNFA:
    """Drop states unreachable from the initial state (epsilon-free input)."""
    seen = {b.initial}
    order = [b.initial]
    for q in order:
        for s in b.alphabet:
            for p in b.delta.get((q, s), ()):
                if p not in seen:
                    seen.add(p)
                    order.append(p)
    states = tuple(q for q in b.states if q in seen)
    delta = {k: v for k, v in b.delta.items() if k[0] in seen}
    return OneDimNFA(states, b.alphabet, delta, b.initial, b.accepts & seen)


def serialize_nfa(b: OneDimNFA) -> str:
    lines = [
        "class: NFA",
        f"alphabet: {' '.join(b.alphabet)}",
        f"states: {' '.join(b.states)}",
        f"initial: {b.initial}",
        f"accept: {' '.join(q for q in b.states if q in b.accepts)}",
    ]
    for (q, s), targets in b.delta.items():
        lines += [f"trans: {q} {s} {p}" for p in targets]
    for q, targets in b.epsilon.items():
        lines += [f"eps: {q} {p}" for p in targets]
    return "\n".join(lines) + "\n"


def parse_nfa(text: str) -> OneDimNFA:
    header: dict[str, str] = {}
    delta: dict[tuple[str, str], list[str]] = {}
    eps: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key, parts = key.strip(), value.split()
        if key == "trans":
            if len(parts) != 3:
                raise ParseError("trans needs <state> <symbol> <state>", lineno)
            delta.setdefault((parts[0], parts[1]), []).append(parts[2])
        elif key == "eps":
            if len(parts) != 2:
                raise ParseError("eps needs <state> <state>", lineno)
            eps.setdefault(parts[0], []).append(parts[1])
        elif key in ("class", "alphabet", "states", "initial", "accept"):
            header[key] = value.strip()
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    for key in ("alphabet", "states", "initial", "accept"):
        if key not in header:
            raise ParseError(f"missing {key} line")
    return OneDimNFA(tuple(header["states"].split()), tuple(header["alphabet"].split()),
                     delta, header["initial"], frozenset(header["accept"].split()), eps)


# -- projections of two-way machines -----------------------------------------------

def row_projection_nfa(a: Automaton2D) -> OneDimNFA:
    """One-way NFA for the first rows of words accepted by a two-way machine.

    While the head is on row 1 the NFA reads the real input.  After the
    first downward move it guesses the cells the machine reads and consumes
    one input symbol per rightward move, so input length tracks the column.
    A pending symbol remembers what the first-row cell of the current column
    must be when the machine left row 1 by moving down from it.  Reaching
    the right ``#`` column means the input must be exhausted.
    """
    if a.ways is not Ways.TWO:
        raise ClassError("row projection needs a two-way automaton")
    sigma = a.alphabet
    acc = a.accept
    END, ANY = ("end",), ("any",)

    def allowed(pend):
        return (pend,) if pend is not None else sigma

    delta: dict = {}
    eps: dict = {}
    out: dict = {}

    def edge(src, sym, dst):
        delta.setdefault((src, sym), []).append(dst)
        out.setdefault(src, []).append(dst)

    def eps_edge(src, dst):
        eps.setdefault(src, []).append(dst)
        out.setdefault(src, []).append(dst)

    def successors(node):
        kind = node[0]
        if kind == "first":
            q = node[1]
            for s in sigma:
                for p, d in a.moves(q, s):
                    if d is Direction.R:
                        if p == acc:
                            edge(node, s, ("tail", None))
                            edge(node, s, END)
                        else:
                            edge(node, s, ("first", p))
                            edge(node, s, ("right", p))
                    elif p == acc:
                        eps_edge(node, ("tail", s))
                    else:
                        eps_edge(node, ("below", p, s))
                        eps_edge(node, ("bottom", p, s))
        elif kind == "below":
            _, q, pend = node
            for s in sigma:
                for p, d in a.moves(q, s):
                    if d is Direction.R:
                        for t in allowed(pend):
                            if p == acc:
                                edge(node, t, ("tail", None))
                                edge(node, t, END)
                            else:
                                edge(node, t, ("below", p, None))
                                edge(node, t, ("right", p))
                    elif p == acc:
                        eps_edge(node, ("tail", pend))
                    else:
                        eps_edge(node, ("below", p, pend))
                        eps_edge(node, ("bottom", p, pend))
        elif kind == "bottom":
            _, q, pend = node
            for p, d in a.moves(q, BORDER):
                if d is not Direction.R:
                    continue
                for t in allowed(pend):
                    if p == acc:
                        edge(node, t, ("tail", None))
                        edge(node, t, END)
                    else:
                        edge(node, t, ("bottom", p, None))
        elif kind == "right":
            q = node[1]
            for p, d in a.moves(q, BORDER):
                if d is Direction.D:
                    eps_edge(node, END if p == acc else ("right", p))
        elif kind == "tail":
            for t in allowed(node[1]):
                edge(node, t, ANY)
        elif node == ANY:
            for t in sigma:
                edge(node, t, ANY)

    start = ("tail", None) if a.initial == acc else ("first", a.initial)
    order = [start]
    seen = {start}
    for node in order:
        successors(node)
        for nxt in out.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)

    def name(node) -> str:
        kind = node[0]
        if kind in ("first", "right"):
            return f"{node[1]}/{kind}"
        if kind in ("below", "bottom"):
            return f"{node[1]}/{kind}[{node[2] or '*'}]"
        if kind == "tail":
            return f"accept/tail[{node[1] or '*'}]"
        return f"accept/{kind}"

    nfa = OneDimNFA(
        tuple(name(n) for n in order),
        sigma,
        {(name(src), s): [name(t) for t in ts] for (src, s), ts in delta.items()},
        name(start),
        {name(END), name(ANY)} & {name(n) for n in order},
        {name(src): [name(t) for t in ts] for src, ts in eps.items()},
    )
    return trim(eliminate_epsilon(nfa))


def col_projection_nfa(a: Automaton2D) -> OneDimNFA:
    if a.ways is not Ways.TWO:
        raise ClassError("column projection needs a two-way automaton")
    return row_projection_nfa(transpose(a))


def row_projection_2way_unary3w(a: Automaton2D) -> OneDimTwoWayNFA:
    """Two-way 1-D NFA accepting ``a^n`` iff some ``m x n`` word is in ``L(a)``.

    A guard state rejects the empty tape, which no two-dimensional word has
    as its first row.
    """
    flat = to_one_dim(a)
    start = "start"
    while start in flat.states:
        start += "'"
    delta = dict(flat.delta)
    delta[(start, a.alphabet[0])] = ((flat.initial, Step.STAY),)
    return OneDimTwoWayNFA((start,) + flat.states, flat.alphabet, delta, start,
                           flat.accept, allow_stay=True)


# -- the composite-number gadget -----------------------------------------------------

def build_composite(symbol: str = "a") -> Automaton2D:
    """A unary 2DFA-3W whose column projection is the composite numbers.

    The head zigzags diagonally between the side edges, so every sweep
    spans exactly ``cols`` rows.  It accepts when a sweep (the second or a
    later one) ends on the last row, i.e. when ``rows = k * cols`` with
    ``k >= 2``; a one-column word is rejected up front.
    """
    D, L, R = Direction.D, Direction.L, Direction.R
    a, h = symbol, BORDER
    t = {
        ("start", a): ("first", R),
        ("first", a): ("rd1", D),
    }
    for k in ("1", "2"):
        nxt = "2"
        t[(f"r{k}", a)] = (f"rd{k}", D)
        t[(f"r{k}", h)] = (f"rp{k}", D)
        t[(f"rd{k}", a)] = (f"r{k}", R)
        t[(f"rp{k}", h)] = (f"rq{k}", L)
        t[(f"rq{k}", a)] = (f"l{nxt}", L)
        if k == "2":
            t[(f"rq{k}", h)] = ("acc", R)
    t[("l2", a)] = ("ld2", D)
    t[("l2", h)] = ("lp2", D)
    t[("ld2", a)] = ("l2", L)
    t[("lp2", h)] = ("lq2", R)
    t[("lq2", a)] = ("r2", R)
    t[("lq2", h)] = ("acc", L)
    states = ("start", "first", "r1", "rd1", "rp1", "rq1",
              "r2", "rd2", "rp2", "rq2", "l2", "ld2", "lp2", "lq2", "acc")
    delta = {k: (v,) for k, v in t.items()}
    return Automaton2D(states, (a,), AutomatonClass(Ways.THREE, True), delta, "start", "acc")


# -- spectra --------------------------------------------------------------------------

class Axis(enum.Enum):
    ROW = "row"
    COLUMN = "col"


@dataclass(frozen=True)
class Spectrum:
    axis: Axis
    max_rows: int
    max_cols: int
    members: frozenset

    def sorted_members(self) -> list:
        return sorted(self.members, key=lambda m: (m if isinstance(m, int) else (len(m), m)))


def spectrum(a: Automaton2D, axis: Axis, max_rows: int, max_cols: int,
             budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Projection members realised by accepted words within the bounds.

    For a unary alphabet the members are lengths, otherwise strings.
    """
    if max_rows < 1 or max_cols < 1:
        raise ValueError("bounds must be at least 1")
    sigma = a.alphabet
    if candidate_count(len(sigma), max_rows, max_cols, cap=budget) > budget:
        raise AutomatonError("spectrum enumeration exceeds the membership budget")
    unary = len(sigma) == 1
    members = set()
    for rows, cols in shapes(max_rows, max_cols):
        n = rows * cols
        proj = list(range(cols)) if axis is Axis.ROW else [r * cols for r in range(rows)]
        if unary:
            if len(proj) not in members and explore(a, rows, cols, (sigma[0],) * n)[0]:
                members.add(len(proj))
            continue
        digits = [0] * n
        while True:
            cells = tuple(sigma[d] for d in digits)
            ok, k = explore(a, rows, cols, cells)
            if ok:
                # every completion of the unread cells is accepted too
                free = [i for i in proj if i > k]
                for fill in itertools.product(sigma, repeat=len(free)):
                    chosen = dict(zip(free, fill))
                    members.add("".join(chosen.get(i, cells[i]) for i in proj))
            if k < 0:
                break
            for i in range(k + 1, n):
                digits[i] = 0
            while k >= 0:
                digits[k] += 1
                if digits[k] < len(sigma):
                    break
                digits[k] = 0
                k -= 1
            if k < 0:
                break
    return Spectrum(axis, max_rows, max_cols, frozenset(members))
