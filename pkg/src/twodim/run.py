"""Configuration-graph simulation for all six machine classes."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .core import BORDER, AlphabetError, Automaton2D, ClassError, Word2D


class Configuration(NamedTuple):
    state: str
    row: int
    col: int

    def __str__(self) -> str:
        return f"{self.state} ({self.row},{self.col})"


@dataclass(frozen=True)
class Trace:
    configurations: tuple[Configuration, ...]

    @property
    def final(self) -> Configuration:
        return self.configurations[-1]

    def __len__(self) -> int:
        return len(self.configurations)

    def __iter__(self):
        return iter(self.configurations)


class HaltCause(enum.Enum):
    UNDEFINED_TRANSITION = "UndefinedTransition"
    FRAME_EXIT = "FrameExit"
    LOOP_DETECTED = "LoopDetected"


@dataclass(frozen=True)
class RejectReport:
    cause: HaltCause
    final: Configuration
    trace: Trace
    repeated_at: int | None = None  # index of the first occurrence, for loops


def _check_alphabet(a: Automaton2D, w: Word2D) -> None:
    extra = w.symbols() - set(a.alphabet)
    if extra:
        raise AlphabetError(f"word uses symbols {sorted(extra)} outside the alphabet")


def step(a: Automaton2D, w: Word2D, c: Configuration) -> frozenset[Configuration]:
    """Successors of ``c``; moves leaving the ``#`` frame are dropped."""
    if c.state == a.accept:
        raise ValueError("no step is defined from the accept state")
    out = set()
    for p, d in a.moves(c.state, w.at(c.row, c.col)):
        dr, dc = d.delta
        r, col = c.row + dr, c.col + dc
        if w.in_frame(r, col):
            out.add(Configuration(p, r, col))
    return frozenset(out)


def explore(a: Automaton2D, rows: int, cols: int, cells) -> tuple[bool, int]:
    """Reachability core shared by membership and the enumerators.

    ``cells`` is the row-major flat tuple of the word.  Returns whether the
    accept state is reachable and the largest flat index of an interior
    cell the search looked at (-1 if none).  The verdict only depends on
    cells up to that index.
    """
    if a.initial == a.accept:
        return True, -1
    table = a._compiled
    accept = a.accept
    top, bottom, right = 0, rows + 1, cols + 1
    max_read = -1
    start = (a.initial, 1, 1)
    seen = {start}
    todo = [start]
    pop = todo.pop
    push = todo.append
    while todo:
        q, r, c = pop()
        if 0 < r < bottom and 0 < c < right:
            idx = (r - 1) * cols + c - 1
            if idx > max_read:
                max_read = idx
            sym = cells[idx]
        else:
            sym = BORDER
        moves = table.get((q, sym))
        if not moves:
            continue
        for p, dr, dc in moves:
            nr, nc = r + dr, c + dc
            if nr < top or nr > bottom or nc < 0 or nc > right:
                continue
            if p == accept:
                return True, max_read
            key = (p, nr, nc)
            if key not in seen:
                seen.add(key)
                push(key)
    return False, max_read


def membership(a: Automaton2D, w: Word2D) -> bool:
    """True iff a configuration in the accept state is reachable from ``(q0, 1, 1)``."""
    _check_alphabet(a, w)
    flat = tuple(s for row in w.cells for s in row)
    return explore(a, w.rows, w.cols, flat)[0]


def accepting_trace(a: Automaton2D, w: Word2D) -> Trace | None:
    """A shortest accepting run (breadth-first), or None when ``w`` is rejected."""
    _check_alphabet(a, w)
    start = Configuration(a.initial, 1, 1)
    if a.initial == a.accept:
        return Trace((start,))
    parent = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for n in sorted(step(a, w, c)):
            if n in parent:
                continue
            parent[n] = c
            if n.state == a.accept:
                path = [n]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return Trace(tuple(reversed(path)))
            queue.append(n)
    return None


def trace(a: Automaton2D, w: Word2D) -> Trace | RejectReport:
    """The unique run of a deterministic machine, or why it stopped without accepting."""
    if not a.deterministic:
        raise ClassError("trace needs a deterministic automaton")
    _check_alphabet(a, w)
    c = Configuration(a.initial, 1, 1)
    path = [c]
    index = {c: 0}
    while c.state != a.accept:
        moves = a.moves(c.state, w.at(c.row, c.col))
        if not moves:
            return RejectReport(HaltCause.UNDEFINED_TRANSITION, c, Trace(tuple(path)))
        p, d = moves[0]
        dr, dc = d.delta
        r, col = c.row + dr, c.col + dc
        if not w.in_frame(r, col):
            return RejectReport(HaltCause.FRAME_EXIT, c, Trace(tuple(path)))
        c = Configuration(p, r, col)
        if c in index:
            return RejectReport(HaltCause.LOOP_DETECTED, c, Trace(tuple(path)), index[c])
        index[c] = len(path)
        path.append(c)
    return Trace(tuple(path))
