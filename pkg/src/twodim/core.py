"""Domain types for two-dimensional automata, plus parsing and structural transforms.

Coordinates are 1-based.  A word with ``rows`` x ``cols`` cells occupies
``(1..rows) x (1..cols)``; row 0, row ``rows+1``, column 0 and column
``cols+1`` form the ``#`` frame.  Anything further out is off the board.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

BORDER = "#"


class AutomatonError(ValueError):
    """Base class for every error raised by this package."""


class ParseError(AutomatonError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ValidationError(AutomatonError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ClassError(AutomatonError):
    """The operation is not defined for this automaton class."""


class AlphabetError(AutomatonError):
    pass


class Direction(enum.Enum):
    U = "U"
    D = "D"
    L = "L"
    R = "R"

    @property
    def delta(self) -> tuple[int, int]:
        return _OFFSETS[self]

    def transposed(self) -> Direction:
        return _TRANSPOSE[self]


_OFFSETS = {
    Direction.U: (-1, 0),
    Direction.D: (1, 0),
    Direction.L: (0, -1),
    Direction.R: (0, 1),
}
_TRANSPOSE = {
    Direction.U: Direction.L,
    Direction.L: Direction.U,
    Direction.D: Direction.R,
    Direction.R: Direction.D,
}
_DIR_ORDER = {d: i for i, d in enumerate(Direction)}


class Ways(enum.Enum):
    FOUR = "4W"
    THREE = "3W"
    TWO = "2W"

    @property
    def directions(self) -> frozenset[Direction]:
        return _ALLOWED[self]


_ALLOWED = {
    Ways.FOUR: frozenset(Direction),
    Ways.THREE: frozenset({Direction.D, Direction.L, Direction.R}),
    Ways.TWO: frozenset({Direction.D, Direction.R}),
}


@dataclass(frozen=True)
class AutomatonClass:
    ways: Ways
    deterministic: bool

    @classmethod
    def parse(cls, tag: str) -> AutomatonClass:
        tag = tag.strip()
        try:
            kind, ways = tag.split("-")
            if kind not in ("2DFA", "2NFA"):
                raise ValueError
            return cls(Ways(ways), kind == "2DFA")
        except ValueError:
            raise AutomatonError(f"unknown automaton class {tag!r}") from None

    def __str__(self) -> str:
        return ("2DFA-" if self.deterministic else "2NFA-") + self.ways.value


Move = tuple[str, Direction]


def _canonical_delta(states, alphabet, delta):
    s_index = {q: i for i, q in enumerate(states)}
    a_index = {s: i for i, s in enumerate(alphabet)}
    a_index.setdefault(BORDER, len(alphabet))

    def key_order(key):
        q, s = key
        return (s_index.get(q, len(states)), q, a_index.get(s, len(alphabet) + 1), s)

    def move_order(move):
        q, d = move
        return (s_index.get(q, len(states)), q, _DIR_ORDER[d])

    out = {}
    for key in sorted(delta, key=key_order):
        moves = tuple(sorted(set(delta[key]), key=move_order))
        if moves:
            out[key] = moves
    return out


@dataclass(frozen=True)
class Automaton2D:
    """A two-dimensional automaton ``(Q, Sigma, delta, q0, q_accept)``.

    ``delta`` maps ``(state, symbol)`` to a tuple of ``(state, Direction)``
    moves; ``symbol`` may be ``#``.  The constructor only normalises the
    transition table into a canonical order; it does not validate.  Use
    :func:`validate` (or :func:`parse_automaton`, which validates).
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    cls: AutomatonClass
    delta: Mapping[tuple[str, str], tuple[Move, ...]]
    initial: str
    accept: str

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(
            self, "delta", _canonical_delta(self.states, self.alphabet, self.delta)
        )

    def __hash__(self) -> int:
        return hash((self.states, self.alphabet, self.cls, self.initial, self.accept,
                     tuple(self.delta.items())))

    @property
    def ways(self) -> Ways:
        return self.cls.ways

    @property
    def deterministic(self) -> bool:
        return self.cls.deterministic

    def moves(self, state: str, symbol: str) -> tuple[Move, ...]:
        return self.delta.get((state, symbol), ())

    def transitions(self) -> Iterator[tuple[str, str, str, Direction]]:
        for (q, s), moves in self.delta.items():
            for p, d in moves:
                yield q, s, p, d

    @cached_property
    def _compiled(self) -> dict[tuple[str, str], tuple[tuple[str, int, int], ...]]:
        # (state, symbol) -> ((target, drow, dcol), ...), used by the simulators
        return {
            key: tuple((p, *d.delta) for p, d in moves)
            for key, moves in self.delta.items()
        }

    def with_class(self, cls: AutomatonClass) -> Automaton2D:
        return Automaton2D(self.states, self.alphabet, cls, self.delta,
                           self.initial, self.accept)


def accept_all(alphabet: Sequence[str], ways: Ways = Ways.TWO,
               deterministic: bool = True) -> Automaton2D:
    """The one-state machine whose initial state is its accept state."""
    return Automaton2D(("q0",), tuple(alphabet), AutomatonClass(ways, deterministic),
                       {}, "q0", "q0")


def accept_none(alphabet: Sequence[str], ways: Ways = Ways.TWO,
                deterministic: bool = True) -> Automaton2D:
    return Automaton2D(("q0", "acc"), tuple(alphabet), AutomatonClass(ways, deterministic),
                       {}, "q0", "acc")


def validate(a: Automaton2D) -> list[str]:
    """Return every invariant violation of ``a`` (empty when valid)."""
    problems = []
    state_set = set(a.states)
    if len(state_set) != len(a.states):
        problems.append("duplicate state identifiers")
    if len(set(a.alphabet)) != len(a.alphabet):
        problems.append("duplicate alphabet symbols")
    if BORDER in a.alphabet:
        problems.append(f"border symbol {BORDER} may not be part of the alphabet")
    for s in a.alphabet:
        if len(s) != 1 or s.isspace():
            problems.append(f"symbol {s!r} is not a single non-space character")
    if a.initial not in state_set:
        problems.append(f"initial state {a.initial} is not a declared state")
    if a.accept not in state_set:
        problems.append(f"accept state {a.accept} is not a declared state")
    allowed = a.ways.directions
    symbols = set(a.alphabet) | {BORDER}
    for (q, s), moves in a.delta.items():
        if q == a.accept:
            problems.append(f"transition out of accept state {q} on {s}")
        if q not in state_set:
            problems.append(f"unknown state {q} in transition on {s}")
        if s not in symbols:
            problems.append(f"unknown symbol {s!r} in transition from {q}")
        if a.deterministic and len(moves) > 1:
            problems.append(
                f"nondeterministic choice in deterministic automaton at ({q}, {s})")
        for p, d in moves:
            if p not in state_set:
                problems.append(f"unknown target state {p} in transition ({q}, {s})")
            if d not in allowed:
                problems.append(
                    f"direction {d.value} not permitted for class {a.cls} "
                    f"in transition {q} {s} {d.value} {p}")
    return problems


def check(a: Automaton2D) -> Automaton2D:
    problems = validate(a)
    if problems:
        raise ValidationError(problems)
    return a


# -- text formats --------------------------------------------------------------

def _split_directive(line: str, lineno: int) -> tuple[str, str]:
    key, sep, rest = line.partition(":")
    if not sep:
        raise ParseError(f"expected 'key: value', got {line!r}", lineno)
    return key.strip(), rest.strip()


def parse_automaton(text: str) -> Automaton2D:
    """Parse the line-oriented automaton format and validate the result."""
    header: dict[str, str] = {}
    delta: dict[tuple[str, str], list[Move]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        key, value = _split_directive(line, lineno)
        if key == "trans":
            parts = value.split()
            if len(parts) != 4:
                raise ParseError("trans needs <state> <symbol> <direction> <state>", lineno)
            q, s, d, p = parts
            try:
                direction = Direction(d)
            except ValueError:
                raise ParseError(f"unknown direction {d!r}", lineno) from None
            delta.setdefault((q, s), []).append((p, direction))
        elif key in ("class", "alphabet", "states", "initial", "accept"):
            if key in header:
                raise ParseError(f"duplicate {key} line", lineno)
            header[key] = value
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    for key in ("class", "alphabet", "states", "initial", "accept"):
        if key not in header:
            raise ParseError(f"missing {key} line")
    try:
        cls = AutomatonClass.parse(header["class"])
    except AutomatonError as exc:
        raise ParseError(str(exc)) from None
    a = Automaton2D(
        states=tuple(header["states"].split()),
        alphabet=tuple(header["alphabet"].split()),
        cls=cls,
        delta=delta,
        initial=header["initial"],
        accept=header["accept"],
    )
    return check(a)


def serialize_automaton(a: Automaton2D) -> str:
    lines = [
        f"class: {a.cls}",
        f"alphabet: {' '.join(a.alphabet)}",
        f"states: {' '.join(a.states)}",
        f"initial: {a.initial}",
        f"accept: {a.accept}",
    ]
    lines += [f"trans: {q} {s} {d.value} {p}" for q, s, p, d in a.transitions()]
    return "\n".join(lines) + "\n"


# -- words ---------------------------------------------------------------------

@dataclass(frozen=True)
class Word2D:
    cells: tuple[tuple[str, ...], ...]
    rows: int = field(init=False)
    cols: int = field(init=False)

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        if not cells or not cells[0]:
            raise AutomatonError("a two-dimensional word needs at least one row and column")
        if any(len(row) != len(cells[0]) for row in cells):
            raise AutomatonError("rows of a two-dimensional word must have equal length")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "rows", len(cells))
        object.__setattr__(self, "cols", len(cells[0]))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[str]]) -> Word2D:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def unary(cls, rows: int, cols: int, symbol: str = "a") -> Word2D:
        return cls(((symbol,) * cols,) * rows)

    def at(self, row: int, col: int) -> str:
        if row == 0 or col == 0 or row == self.rows + 1 or col == self.cols + 1:
            if 0 <= row <= self.rows + 1 and 0 <= col <= self.cols + 1:
                return BORDER
        if 1 <= row <= self.rows and 1 <= col <= self.cols:
            return self.cells[row - 1][col - 1]
        raise IndexError(f"cell ({row},{col}) lies outside the framed word")

    def in_frame(self, row: int, col: int) -> bool:
        return 0 <= row <= self.rows + 1 and 0 <= col <= self.cols + 1

    def transpose(self) -> Word2D:
        return Word2D(tuple(zip(*self.cells)))

    def symbols(self) -> set[str]:
        return {s for row in self.cells for s in row}

    def first_row(self) -> tuple[str, ...]:
        return self.cells[0]

    def first_col(self) -> tuple[str, ...]:
        return tuple(row[0] for row in self.cells)

    def __str__(self) -> str:
        return "\n".join("".join(row) for row in self.cells)


def parse_word(text: str, alphabet: Sequence[str] | None = None) -> Word2D:
    """Parse a word file.  ``unary RxC`` uses the first alphabet symbol (``a`` by default)."""
    lines = [ln.rstrip("\r") for ln in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty word file")
    head = lines[0].strip()
    if head.startswith("unary"):
        try:
            r, c = head[len("unary"):].strip().lower().split("x")
            rows, cols = int(r), int(c)
        except ValueError:
            raise ParseError(f"bad unary shorthand {head!r}", 1) from None
        if rows < 1 or cols < 1:
            raise ParseError("unary dimensions must be positive", 1)
        symbol = alphabet[0] if alphabet else "a"
        return Word2D.unary(rows, cols, symbol)
    width = len(lines[0])
    for lineno, line in enumerate(lines, 1):
        if len(line) != width:
            raise ParseError("all rows must have equal length", lineno)
        if BORDER in line:
            raise ParseError(f"{BORDER} may not appear inside a word", lineno)
        if alphabet is not None:
            bad = set(line) - set(alphabet)
            if bad:
                raise ParseError(f"symbols {sorted(bad)} not in alphabet", lineno)
    return Word2D.from_rows(lines)


def serialize_word(w: Word2D) -> str:
    return str(w) + "\n"


def iter_words(alphabet: Sequence[str], rows: int, cols: int) -> Iterator[Word2D]:
    """All ``rows x cols`` words, lexicographic in row-major order."""
    for flat in itertools.product(alphabet, repeat=rows * cols):
        yield Word2D(tuple(flat[r * cols:(r + 1) * cols] for r in range(rows)))


def shapes(max_rows: int, max_cols: int) -> list[tuple[int, int]]:
    """Shapes ordered by area, then by row count."""
    return sorted(
        ((r, c) for r in range(1, max_rows + 1) for c in range(1, max_cols + 1)),
        key=lambda rc: (rc[0] * rc[1], rc[0]),
    )


# -- structural transforms -----------------------------------------------------

def transpose(a: Automaton2D) -> Automaton2D:
    """Swap the roles of rows and columns (D<->R, U<->L)."""
    if a.ways is Ways.THREE:
        raise ClassError("cannot transpose a three-way automaton")
    delta = {key: tuple((p, d.transposed()) for p, d in moves)
             for key, moves in a.delta.items()}
    return Automaton2D(a.states, a.alphabet, a.cls, delta, a.initial, a.accept)


# -- one-dimensional two-way automata --------------------------------------------

class Step(enum.Enum):
    LEFT = "L"
    RIGHT = "R"
    STAY = "S"

    @property
    def offset(self) -> int:
        return {"L": -1, "R": 1, "S": 0}[self.value]


@dataclass(frozen=True)
class OneDimTwoWayNFA:
    """A one-dimensional two-way NFA with ``#`` at both ends of its tape.

    Stay moves are only legal when ``allow_stay`` is set.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], tuple[tuple[str, Step], ...]]
    initial: str
    accept: str
    allow_stay: bool = False

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        delta = {k: tuple(dict.fromkeys(v)) for k, v in self.delta.items() if v}
        object.__setattr__(self, "delta", delta)
        if not self.allow_stay:
            for moves in delta.values():
                if any(m is Step.STAY for _, m in moves):
                    raise AutomatonError("stay move in a machine without allow_stay")

    def moves(self, state: str, symbol: str) -> tuple[tuple[str, Step], ...]:
        return self.delta.get((state, symbol), ())

    def has_stay(self) -> bool:
        return any(m is Step.STAY for moves in self.delta.values() for _, m in moves)


def onedim_membership(b: OneDimTwoWayNFA, word: int | Sequence[str]) -> bool:
    """Configuration-graph reachability for a one-dimensional two-way machine.

    An integer argument stands for the unary word of that length over the
    first alphabet symbol.  The head starts on position 1 (which is the
    right ``#`` when the word is empty).
    """
    if isinstance(word, int):
        if word < 0:
            raise ValueError("length must be non-negative")
        tape = [BORDER] + [b.alphabet[0]] * word + [BORDER]
    else:
        tape = [BORDER, *word, BORDER]
    if b.initial == b.accept:
        return True
    last = len(tape) - 1
    start = (b.initial, 1)
    seen = {start}
    stack = [start]
    while stack:
        q, pos = stack.pop()
        for p, m in b.moves(q, tape[pos]):
            nxt = pos + m.offset
            if not 0 <= nxt <= last:
                continue
            if p == b.accept:
                return True
            if (p, nxt) not in seen:
                seen.add((p, nxt))
                stack.append((p, nxt))
    return False
