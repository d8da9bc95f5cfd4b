"""Linear-bounded automata, double-encoded computation tables, and the table checker.

A configuration of width ``w`` is written as ``w - 1`` overlapping pairs of
tape cells, the scanned cell carrying the current state.  Stacking the
encoded configurations of a run gives a two-dimensional word; the checker
built by :func:`build_checker` is a 2NFA-2W accepting exactly the words that
are *not* accepting computation tables of a given machine.

Pair symbols become single characters of a private alphabet so that tables
and checkers can be written in the ordinary file formats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .core import (
    BORDER,
    Automaton2D,
    AutomatonClass,
    AutomatonError,
    Direction,
    ParseError,
    ValidationError,
    Ways,
    Word2D,
)

Component = tuple[str, "str | None"]  # (tape symbol, state or None)
PairSymbol = tuple[Component, Component]
PairRow = tuple[PairSymbol, ...]

_CHAR_BASE = 0x4E00
DEFAULT_STEP_BUDGET = 10_000


class StepBudgetExceeded(AutomatonError):
    pass


def component_str(c: Component) -> str:
    return c[0] if c[1] is None else f"{c[0]}_{c[1]}"


def parse_component(token: str) -> Component:
    symbol, sep, state = token.partition("_")
    if not symbol or (sep and not state):
        raise AutomatonError(f"bad tape cell {token!r}")
    return (symbol, state if sep else None)


def pair_str(p: PairSymbol) -> str:
    return f"({component_str(p[0])},{component_str(p[1])})"


@dataclass(frozen=True)
class LBAConfig:
    tape: tuple[str, ...]
    head: int  # 1-based
    state: str

    def components(self) -> list[Component]:
        return [(s, self.state if i == self.head else None)
                for i, s in enumerate(self.tape, 1)]

    def __str__(self) -> str:
        return " ".join(component_str(c) for c in self.components())


def parse_config(text: str) -> LBAConfig:
    """Parse ``"a b c_q d"``: whitespace-separated cells, the head cell subscripted."""
    cells = [parse_component(t) for t in text.split()]
    marked = [i for i, (_, q) in enumerate(cells, 1) if q is not None]
    if len(marked) != 1:
        raise AutomatonError("a configuration needs exactly one state-marked cell")
    return LBAConfig(tuple(s for s, _ in cells), marked[0], cells[marked[0] - 1][1])


@dataclass(frozen=True)
class LBASpec:
    """A deterministic linear-bounded automaton.

    ``delta`` maps ``(state, symbol)`` to ``(state, written symbol, "L" | "R")``.
    The head may not leave the input segment; such a move halts the machine.
    """

    states: tuple[str, ...]
    gamma: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], tuple[str, str, str]]
    initial: str
    accept: str

    def __post_init__(self):
        for name in ("states", "gamma", "input_alphabet"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "delta", dict(self.delta))

    def __hash__(self) -> int:
        return hash((self.states, self.gamma, self.input_alphabet,
                     tuple(sorted(self.delta.items())), self.initial, self.accept))

    @cached_property
    def pairs(self) -> PairAlphabet:
        return PairAlphabet(self)


def validate_lba(m: LBASpec) -> list[str]:
    problems = []
    if m.initial not in m.states:
        problems.append(f"initial state {m.initial} not declared")
    if m.accept not in m.states:
        problems.append(f"accept state {m.accept} not declared")
    if m.initial == m.accept:
        problems.append("initial and accept state must differ")
    if set(m.states) & set(m.gamma):
        problems.append("state ids and tape symbols must be disjoint")
    for s in m.gamma:
        if "_" in s or not s or any(ch.isspace() for ch in s) or s == BORDER:
            problems.append(f"bad tape symbol {s!r}")
    if not set(m.input_alphabet) <= set(m.gamma):
        problems.append("input alphabet must be a subset of gamma")
    for (q, s), (p, t, mv) in m.delta.items():
        if q == m.accept:
            problems.append(f"transition out of accept state on {s}")
        if q not in m.states or p not in m.states:
            problems.append(f"unknown state in transition ({q}, {s})")
        if s not in m.gamma or t not in m.gamma:
            problems.append(f"unknown tape symbol in transition ({q}, {s})")
        if mv not in ("L", "R"):
            problems.append(f"bad head move {mv!r} in transition ({q}, {s})")
    return problems


def parse_lba(text: str) -> LBASpec:
    header: dict[str, str] = {}
    delta: dict[tuple[str, str], tuple[str, str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        if key == "lbatrans":
            parts = value.split()
            if len(parts) != 5:
                raise ParseError("lbatrans needs <q> <s> <q'> <s'> <L|R>", lineno)
            q, s, p, t, mv = parts
            if (q, s) in delta:
                raise ParseError(f"nondeterministic LBA: second transition on ({q}, {s})",
                                 lineno)
            delta[(q, s)] = (p, t, mv)
        elif key in ("lba-states", "gamma", "input", "initial", "accept"):
            header[key] = value.strip()
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    for key in ("lba-states", "gamma", "input", "initial", "accept"):
        if key not in header:
            raise ParseError(f"missing {key} line")
    m = LBASpec(tuple(header["lba-states"].split()), tuple(header["gamma"].split()),
                tuple(header["input"].split()), delta, header["initial"], header["accept"])
    problems = validate_lba(m)
    if problems:
        raise ValidationError(problems)
    return m


def serialize_lba(m: LBASpec) -> str:
    lines = [
        f"lba-states: {' '.join(m.states)}",
        f"gamma: {' '.join(m.gamma)}",
        f"input: {' '.join(m.input_alphabet)}",
        f"initial: {m.initial}",
        f"accept: {m.accept}",
    ]
    lines += [f"lbatrans: {q} {s} {p} {t} {mv}" for (q, s), (p, t, mv) in m.delta.items()]
    return "\n".join(lines) + "\n"


# -- running the machine -------------------------------------------------------

def initial_config(m: LBASpec, word: Sequence[str]) -> LBAConfig:
    return LBAConfig(tuple(word), 1, m.initial)


def lba_step(m: LBASpec, c: LBAConfig) -> LBAConfig | None:
    """The successor configuration, or None when the machine halts."""
    if c.state == m.accept:
        raise ValueError("the accept configuration has no successor")
    rule = m.delta.get((c.state, c.tape[c.head - 1]))
    if rule is None:
        return None
    p, t, mv = rule
    head = c.head + (1 if mv == "R" else -1)
    if not 1 <= head <= len(c.tape):
        return None
    tape = c.tape[:c.head - 1] + (t,) + c.tape[c.head:]
    return LBAConfig(tape, head, p)


def run_lba(m: LBASpec, word: Sequence[str],
            budget: int = DEFAULT_STEP_BUDGET) -> list[LBAConfig] | None:
    """The accepting run on ``word`` as a list of configurations, or None.

    Raises :class:`StepBudgetExceeded` if the run neither halts, accepts nor
    repeats a configuration within ``budget`` steps.
    """
    c = initial_config(m, word)
    run = [c]
    seen = {c}
    while c.state != m.accept:
        if len(run) - 1 >= budget:
            raise StepBudgetExceeded(f"no verdict within {budget} steps")
        c = lba_step(m, c)
        if c is None or c in seen:
            return None
        seen.add(c)
        run.append(c)
    return run


# -- double encoding -------------------------------------------------------------

def double_encode(c: LBAConfig) -> PairRow:
    if len(c.tape) < 2:
        raise AutomatonError("double encoding needs a tape of width at least 2")
    comps = c.components()
    return tuple(zip(comps, comps[1:]))


@dataclass(frozen=True)
class MalformedReport:
    position: int  # 1-based pair index
    reason: str


def decode(row: Sequence[PairSymbol]) -> LBAConfig | MalformedReport:
    if not row:
        return MalformedReport(0, "empty row")
    comps = [row[0][0], row[0][1]]
    for i in range(1, len(row)):
        if row[i][0] != row[i - 1][1]:
            return MalformedReport(i + 1, "stitching mismatch")
        comps.append(row[i][1])
    marked = []
    for i, (_, q) in enumerate(comps, 1):
        if q is not None:
            marked.append(i)
            if len(marked) == 2:
                return MalformedReport(max(1, i - 1), "two state marks")
    if not marked:
        return MalformedReport(len(row), "no state mark")
    h = marked[0]
    return LBAConfig(tuple(s for s, _ in comps), h, comps[h - 1][1])


class PairAlphabet:
    """Bijection between pair symbols of a machine and single characters."""

    def __init__(self, m: LBASpec):
        self.components: list[Component] = [(s, None) for s in m.gamma]
        self.components += [(s, q) for s in m.gamma for q in m.states]
        self.pairs: list[PairSymbol] = list(itertools.product(self.components, repeat=2))
        self.chars = tuple(chr(_CHAR_BASE + i) for i in range(len(self.pairs)))
        self._to_char = dict(zip(self.pairs, self.chars))
        self._to_pair = dict(zip(self.chars, self.pairs))

    def char(self, p: PairSymbol) -> str:
        return self._to_char[p]

    def pair(self, ch: str) -> PairSymbol:
        return self._to_pair[ch]

    def __contains__(self, ch: str) -> bool:
        return ch in self._to_pair

    def legend(self) -> str:
        return "".join(f"{ch}\t{pair_str(p)}\n" for p, ch in self._to_char.items())


def table_word(m: LBASpec, configs: Sequence[LBAConfig]) -> Word2D:
    pa = m.pairs
    return Word2D(tuple(tuple(pa.char(p) for p in double_encode(c)) for c in configs))


def table_rows(m: LBASpec, t: Word2D) -> list[PairRow] | None:
    pa = m.pairs
    if any(ch not in pa for row in t.cells for ch in row):
        return None
    return [tuple(pa.pair(ch) for ch in row) for row in t.cells]


def accepting_table(m: LBASpec, word: Sequence[str],
                    budget: int = DEFAULT_STEP_BUDGET) -> Word2D | None:
    """The double-encoded computation table of an accepting run, else None."""
    if len(word) < 2:
        raise AutomatonError("inputs must have length at least 2")
    run = run_lba(m, word, budget)
    return None if run is None else table_word(m, run)


def is_valid_table(m: LBASpec, t: Word2D) -> bool:
    """Whether ``t`` is the computation table of an accepting run of ``m``."""
    rows = table_rows(m, t)
    if rows is None or len(rows) < 2:
        return False
    configs = []
    for row in rows:
        c = decode(row)
        if isinstance(c, MalformedReport):
            return False
        configs.append(c)
    first = configs[0]
    if first.state != m.initial or first.head != 1:
        return False
    if any(s not in m.input_alphabet for s in first.tape):
        return False
    if configs[-1].state != m.accept:
        return False
    for before, after in zip(configs, configs[1:]):
        if before.state == m.accept or lba_step(m, before) != after:
            return False
    return True


# -- the checker -----------------------------------------------------------------

def locally_consistent(m: LBASpec, above: PairSymbol, below: PairSymbol,
                       first: bool, last: bool) -> bool:
    """Whether a vertical pair of pair symbols can occur in one step of ``m``.

    ``first``/``last`` say whether the window covers the first/last tape
    cell, which matters when the head tries to step off the tape.
    """
    heads_above = [i for i in (0, 1) if above[i][1] is not None]
    heads_below = [i for i in (0, 1) if below[i][1] is not None]
    if len(heads_above) > 1 or len(heads_below) > 1:
        return False
    if not heads_above:
        if any(below[i][0] != above[i][0] for i in (0, 1)):
            return False
        if heads_below:
            # the head arrived from a neighbouring cell outside the window
            if heads_below[0] == 0 and first or heads_below[0] == 1 and last:
                return False
        return True
    k = heads_above[0]
    symbol, state = above[k]
    if state == m.accept:
        return False
    rule = m.delta.get((state, symbol))
    if rule is None:
        return False
    new_state, written, mv = rule
    if (k == 0 and mv == "L" and first) or (k == 1 and mv == "R" and last):
        return False
    target = k + (1 if mv == "R" else -1)
    other = 1 - k
    if below[k] != (written, None):
        return False
    expected = (above[other][0], new_state if target == other else None)
    return below[other] == expected


def build_checker(m: LBASpec) -> Automaton2D:
    """A 2NFA-2W over the pair alphabet accepting every word that is not a valid table.

    Branches, chosen nondeterministically at the top-left cell:
    a row is malformed (scanned left to right from column 1); the table has
    one row; row 1 is not an initial configuration; some cell of the last
    row carries a non-accepting state; or a vertically adjacent pair of
    cells is not consistent with one step (the cell to the right of the
    lower one is peeked at to learn whether the window touches the right
    end of the tape).
    """
    problems = validate_lba(m)
    if problems:
        raise ValidationError(problems)
    pa = m.pairs
    D, R = Direction.D, Direction.R
    ACC = "acc"
    delta: dict[tuple[str, str], list[tuple[str, Direction]]] = {}
    comp_index = {c: i for i, c in enumerate(pa.components)}

    def add(q, ch, p, d):
        delta.setdefault((q, ch), []).append((p, d))

    def marked(c):
        return c[1] is not None

    def scan_state(c, count):
        return f"sc{comp_index[c]}.{count}"

    def scan_from_start(q, ch, p):
        n = marked(p[0]) + marked(p[1])
        if n >= 2:
            add(q, ch, ACC, R)
        else:
            add(q, ch, scan_state(p[1], n), R)

    def initial_pair_ok(p, leading):
        (s0, q0), (s1, q1) = p
        if leading:
            ok0 = q0 == m.initial and s0 in m.input_alphabet
        else:
            ok0 = q0 is None and s0 in m.input_alphabet
        return ok0 and q1 is None and s1 in m.input_alphabet

    scan_states = [scan_state(c, n) for c in pa.components for n in (0, 1)]
    dy_states = {}
    for ch in pa.chars:
        p = pa.pair(ch)
        live_mark = any(c[1] is not None and c[1] != m.accept for c in p)
        for walker, col in (("start", 1), ("w1", 1), ("w2", 2)):
            add(walker, ch, "w1" if col == 1 and walker != "w2" else "w2", D)
            add(walker, ch, "w2", R)
            if live_mark:
                add(walker, ch, "cc", D)
            dy = dy_states.setdefault((ch, col), f"dy{pa.chars.index(ch)}.{col}")
            add(walker, ch, dy, D)
            if col == 1:
                scan_from_start(walker, ch, p)
        add("start", ch, ACC if not initial_pair_ok(p, True) else "b", R)
        add("b", ch, ACC if not initial_pair_ok(p, False) else "b", R)
        add("start", ch, "one", D)
        for count in (0, 1):
            for c in pa.components:
                src = scan_state(c, count)
                if p[0] != c:
                    add(src, ch, ACC, R)
                    continue
                n = count + marked(p[1])
                add(src, ch, ACC if n >= 2 else scan_state(p[1], n), R)
    for c in pa.components:
        add(scan_state(c, 0), BORDER, ACC, D)
    add("cc", BORDER, ACC, R)
    add("one", BORDER, ACC, R)
    add("peek-last", BORDER, ACC, D)
    for ch in pa.chars:
        add("peek-more", ch, ACC, R)
    for (x_ch, col), dy in dy_states.items():
        x = pa.pair(x_ch)
        for y_ch in pa.chars:
            y = pa.pair(y_ch)
            ok_last = locally_consistent(m, x, y, col == 1, True)
            ok_more = locally_consistent(m, x, y, col == 1, False)
            if not ok_last and not ok_more:
                add(dy, y_ch, ACC, R)
            elif not ok_last:
                add(dy, y_ch, "peek-last", R)
            elif not ok_more:
                add(dy, y_ch, "peek-more", R)
    states = (["start", "w1", "w2", "b", "one", "cc", "peek-last", "peek-more"]
              + scan_states + list(dy_states.values()) + [ACC])
    return Automaton2D(tuple(states), pa.chars, AutomatonClass(Ways.TWO, False),
                       delta, "start", ACC)
