"""Seeded random machines and a small fixed corpus of example machines."""

from __future__ import annotations

import random
from typing import Sequence

from .core import (
    BORDER,
    Automaton2D,
    AutomatonClass,
    Direction,
    Ways,
    Word2D,
    accept_all,
    accept_none,
)
from .projection import build_composite
from .reduction import LBASpec


def random_automaton(
    rng: random.Random,
    cls: AutomatonClass,
    n_states: int,
    alphabet: Sequence[str],
    density: float = 0.7,
    max_choices: int = 2,
) -> Automaton2D:
    """A random machine with ``n_states`` states, the last one accepting.

    Each (non-accept state, symbol) entry, ``#`` included, is defined with
    probability ``density``.  Nondeterministic entries get up to
    ``max_choices`` distinct moves.  One state means the accept-all machine.
    """
    if n_states < 1:
        raise ValueError("need at least one state")
    alphabet = tuple(alphabet)
    if n_states == 1:
        return accept_all(alphabet, cls.ways, cls.deterministic)
    states = tuple(f"q{i}" for i in range(n_states - 1)) + ("acc",)
    directions = list(cls.ways.directions)
    moves = [(p, d) for p in states for d in directions]
    delta = {}
    for q in states[:-1]:
        for s in alphabet + (BORDER,):
            if rng.random() >= density:
                continue
            k = 1 if cls.deterministic else rng.randint(1, max_choices)
            delta[(q, s)] = tuple(rng.sample(moves, min(k, len(moves))))
    return Automaton2D(states, alphabet, cls, delta, states[0], "acc")


def random_word(rng: random.Random, alphabet: Sequence[str], rows: int, cols: int) -> Word2D:
    return Word2D(tuple(tuple(rng.choice(alphabet) for _ in range(cols))
                        for _ in range(rows)))


def random_corpus(seed: int, count: int, cls: AutomatonClass, max_states: int,
                  alphabets: Sequence[Sequence[str]] = (("a",), ("a", "b")),
                  min_states: int = 1, density: float = 0.7,
                  live: bool = False) -> list[Automaton2D]:
    """``count`` seeded random machines.

    With ``live`` set, machines whose accept state is unreachable in the
    transition graph are skipped (their language is trivially empty).
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = random_automaton(rng, cls, rng.randint(min_states, max_states),
                             rng.choice(alphabets), density)
        if not live or _accept_reachable(a):
            out.append(a)
    return out


def _accept_reachable(a: Automaton2D) -> bool:
    seen = {a.initial}
    todo = [a.initial]
    while todo:
        q = todo.pop()
        for (src, _), moves in a.delta.items():
            if src == q:
                for p, _ in moves:
                    if p not in seen:
                        seen.add(p)
                        todo.append(p)
    return a.accept in seen


def _dfa(states, alphabet, rules, ways=Ways.TWO, deterministic=True):
    delta = {(q, s): ((p, Direction(d)),) for q, s, d, p in rules}
    return Automaton2D(tuple(states), tuple(alphabet), AutomatonClass(ways, deterministic),
                       delta, states[0], states[-1])


def example_machines() -> dict[str, Automaton2D]:
    """Hand-written machines used in tests, documentation and the CLI corpus."""
    two_nfa = AutomatonClass(Ways.TWO, False)
    return {
        "accept-all": accept_all(("a", "b")),
        "accept-none": accept_none(("a", "b")),
        # accepts exactly the words whose top-left cell is b
        "corner-b": _dfa(("q0", "acc"), ("a", "b"), [("q0", "b", "R", "acc")]),
        # unary: accepts words with at least two columns
        "wide": _dfa(("q0", "q1", "acc"), ("a",),
                     [("q0", "a", "R", "q1"), ("q1", "a", "D", "acc")]),
        # walks the main diagonal and accepts at the bottom-right corner
        "square": _dfa(("q0", "q1", "acc"), ("a",),
                       [("q0", "a", "R", "q1"), ("q1", "a", "D", "q0"),
                        ("q0", BORDER, "R", "acc")]),
        # guesses a path to some b
        "some-b": Automaton2D(("q0", "acc"), ("a", "b"), two_nfa,
                              {("q0", "a"): (("q0", Direction.D), ("q0", Direction.R)),
                               ("q0", "b"): (("acc", Direction.R),)},
                              "q0", "acc"),
        # three-way: accepts exactly the one-column words, looping on wider ones
        "three-way": _dfa(("q0", "q1", "acc"), ("a",),
                          [("q0", "a", "R", "q1"), ("q1", "a", "L", "q0"),
                           ("q1", BORDER, "D", "acc")], ways=Ways.THREE),
        "composite": build_composite(),
    }


def toy_lbas() -> dict[str, LBASpec]:
    """Small deterministic LBAs exercising the table checker."""
    return {
        # accepts "ab" in three steps; also every input starting with b
        "swap": LBASpec(("q0", "q1", "acc"), ("a", "b"), ("a", "b"),
                        {("q0", "a"): ("q1", "b", "R"),
                         ("q1", "b"): ("q0", "b", "L"),
                         ("q0", "b"): ("acc", "b", "R")},
                        "q0", "acc"),
        # never reaches its accept state
        "never": LBASpec(("q0", "q1", "acc"), ("a", "b"), ("a", "b"),
                         {("q0", "a"): ("q1", "a", "R"),
                          ("q1", "a"): ("q0", "a", "L"),
                          ("q0", "b"): ("q1", "b", "R")},
                         "q0", "acc"),
        # scans right over a's and accepts at a $ that is not the first cell
        "dollar": LBASpec(("q0", "acc"), ("a", "$"), ("a", "$"),
                          {("q0", "a"): ("q0", "a", "R"),
                           ("q0", "$"): ("acc", "$", "L")},
                          "q0", "acc"),
        # flips bits, bouncing back once before accepting
        "flip": LBASpec(("q0", "q1", "acc"), ("0", "1"), ("0", "1"),
                        {("q0", "0"): ("q0", "1", "R"),
                         ("q0", "1"): ("q1", "0", "L"),
                         ("q1", "1"): ("acc", "1", "R")},
                        "q0", "acc"),
    }
