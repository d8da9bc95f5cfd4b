import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from twodim.core import (
    BORDER,
    AlphabetError,
    Automaton2D,
    AutomatonClass,
    ClassError,
    Direction,
    Ways,
    Word2D,
    accept_all,
    accept_none,
    shapes,
)
from twodim.corpus import random_automaton, random_corpus, random_word
from twodim.projection import build_composite
from twodim.run import (
    Configuration,
    HaltCause,
    RejectReport,
    Trace,
    accepting_trace,
    membership,
    step,
    trace,
)

TWO_NFA = AutomatonClass(Ways.TWO, False)
TWO_DFA = AutomatonClass(Ways.TWO, True)
FOUR_DFA = AutomatonClass(Ways.FOUR, True)

# two cells visited back and forth forever
PING_PONG = Automaton2D(("q0", "q1", "acc"), ("a",), FOUR_DFA,
                        {("q0", "a"): (("q1", Direction.R),),
                         ("q1", "a"): (("q0", Direction.L),)}, "q0", "acc")


def test_step_examples():
    a = Automaton2D(("q0", "q1", "q2"), ("a",), TWO_NFA,
                    {("q0", "a"): (("q1", Direction.D), ("q2", Direction.R)),
                     ("q1", BORDER): (("q2", Direction.R),)}, "q0", "q2")
    w = Word2D.unary(2, 2)
    assert step(a, w, Configuration("q0", 1, 1)) == {Configuration("q1", 2, 1),
                                                     Configuration("q2", 1, 2)}
    # R on the right frame column would leave the frame
    assert step(a, w, Configuration("q1", 1, 3)) == frozenset()
    with pytest.raises(ValueError):
        step(a, w, Configuration("q2", 1, 1))


def test_membership_trivial_machines():
    w = Word2D.from_rows(["ab", "ba"])
    assert membership(accept_all(("a", "b")), w)
    assert not membership(accept_none(("a", "b")), w)


def test_membership_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        membership(accept_all(("a",)), Word2D.from_rows(["ab"]))


def test_looping_four_way_machine_terminates():
    w = Word2D.unary(1, 2)
    assert not membership(PING_PONG, w)
    r = trace(PING_PONG, w)
    assert isinstance(r, RejectReport)
    assert r.cause is HaltCause.LOOP_DETECTED
    assert r.final == Configuration("q0", 1, 1)
    assert r.repeated_at == 0


def test_trace_undefined_and_frame_exit():
    stuck = Automaton2D(("q0", "acc"), ("a",), TWO_DFA, {}, "q0", "acc")
    r = trace(stuck, Word2D.unary(1, 1))
    assert r.cause is HaltCause.UNDEFINED_TRANSITION and len(r.trace) == 1
    runaway = Automaton2D(("q0", "acc"), ("a",), TWO_DFA,
                          {("q0", "a"): (("q0", Direction.R),),
                           ("q0", BORDER): (("q0", Direction.R),)}, "q0", "acc")
    r = trace(runaway, Word2D.unary(1, 2))
    assert r.cause is HaltCause.FRAME_EXIT and r.final == Configuration("q0", 1, 3)


def test_trace_needs_determinism():
    a = random_automaton(random.Random(0), TWO_NFA, 3, ("a",))
    with pytest.raises(ClassError):
        trace(a, Word2D.unary(1, 1))


def test_composite_trace_ends_at_bottom_corner():
    c = build_composite()
    t = trace(c, Word2D.unary(4, 2))
    assert isinstance(t, Trace)
    assert t.final.state == c.accept
    assert t.final.row == 5 and t.final.col in (0, 3)


def _two_way_traces():
    for a in random_corpus(12, 40, TWO_DFA, 4, min_states=2):
        for rows, cols in shapes(3, 3):
            for w in oracles.all_words(a.alphabet, rows, cols):
                yield a, w, trace(a, w)


def test_two_way_traces_are_read_once():
    for a, w, t in _two_way_traces():
        configs = t.configurations if isinstance(t, Trace) else t.trace.configurations
        assert len(configs) <= w.rows + w.cols + 1
        sums = [c.row + c.col for c in configs]
        assert all(x < y for x, y in zip(sums, sums[1:]))
        assert isinstance(t, Trace) == membership(a, w)


def test_accepting_trace_is_a_run():
    for a in random_corpus(13, 40, TWO_NFA, 4, min_states=2):
        for rows, cols in shapes(3, 3):
            for w in oracles.all_words(a.alphabet, rows, cols):
                t = accepting_trace(a, w)
                assert (t is not None) == membership(a, w) == oracles.accepts(a, w)
                if t is None:
                    continue
                assert t.configurations[0] == Configuration(a.initial, 1, 1)
                assert t.final.state == a.accept
                for c, n in zip(t.configurations, t.configurations[1:]):
                    assert n in step(a, w, c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(list(Ways)))
def test_membership_matches_oracle(seed, ways):
    rng = random.Random(seed)
    a = random_automaton(rng, AutomatonClass(ways, False), rng.randint(2, 4), ("a", "b"))
    for _ in range(10):
        w = random_word(rng, ("a", "b"), rng.randint(1, 3), rng.randint(1, 4))
        assert membership(a, w) == oracles.accepts(a, w)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_more_transitions_never_hurt(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, TWO_NFA, 3, ("a", "b"), density=0.5)
    extra = random_automaton(rng, TWO_NFA, 3, ("a", "b"), density=0.5)
    merged = {k: a.delta.get(k, ()) + extra.delta.get(k, ())
              for k in set(a.delta) | set(extra.delta)}
    bigger = Automaton2D(a.states, a.alphabet, TWO_NFA, merged, a.initial, a.accept)
    for rows, cols in shapes(2, 3):
        for w in oracles.all_words(a.alphabet, rows, cols):
            if membership(a, w):
                assert membership(bigger, w)


def test_deterministic_agrees_with_nondeterministic_view():
    for a in random_corpus(14, 40, TWO_DFA, 4, min_states=2):
        n = a.with_class(TWO_NFA)
        for rows, cols in shapes(3, 3):
            for w in oracles.all_words(a.alphabet, rows, cols):
                assert membership(a, w) == membership(n, w)
                assert isinstance(trace(a, w), Trace) == membership(n, w)
