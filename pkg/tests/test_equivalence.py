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
from twodim.corpus import example_machines, random_automaton, random_corpus
from twodim.equivalence import (
    PumpingBound,
    Side,
    Verdict,
    bounded_difference,
    candidate_count,
    decide_equivalence,
    decide_inclusion,
    minimize,
    pumping_bound,
    universality,
)
from twodim.run import membership

TWO_DFA = AutomatonClass(Ways.TWO, True)
TWO_NFA = AutomatonClass(Ways.TWO, False)


def _dfa(rules, states, alphabet=("a",)):
    delta = {(q, s): ((p, Direction(d)),) for q, s, d, p in rules}
    return Automaton2D(states, alphabet, TWO_DFA, delta, states[0], states[-1])


# accepts words with at least two columns / at least two rows
WIDE = _dfa([("q0", "a", "R", "q1"), ("q1", "a", "D", "acc")], ("q0", "q1", "acc"))
TALL = _dfa([("q0", "a", "D", "q1"), ("q1", "a", "R", "acc")], ("q0", "q1", "acc"))


@pytest.mark.parametrize("m,n,sigma,z,f", [(1, 1, 1, 2, 20), (2, 2, 1, 5, 725),
                                           (2, 3, 2, 25, 405625)])
def test_pumping_bound_table(m, n, sigma, z, f):
    b = PumpingBound(m, n, sigma)
    assert (b.z, b.f_z) == (z, f)


def test_pumping_bound_from_machines():
    assert pumping_bound(WIDE, TALL) == PumpingBound(3, 3, 1)
    with pytest.raises(AlphabetError):
        pumping_bound(WIDE, accept_all(("a", "b")))


def test_pumping_bound_is_exact_for_large_inputs():
    b = PumpingBound(10 ** 6, 10 ** 6, 10 ** 3)
    z = 10 ** 18 + 1
    assert b.f_z == z * z * (z * z + z - 1)


@given(st.integers(1, 50), st.integers(1, 50), st.integers(1, 10))
def test_pumping_bound_monotone(m, n, sigma):
    b = PumpingBound(m, n, sigma)
    for bigger in (PumpingBound(m + 1, n, sigma), PumpingBound(m, n + 1, sigma),
                   PumpingBound(m, n, sigma + 1)):
        assert bigger.z > b.z and bigger.f_z > b.f_z


def test_same_machine_is_equivalent_up_to_bound():
    a = example_machines()["corner-b"]
    v = bounded_difference(a, a, 3, 3)
    assert v.kind is Verdict.EQUIVALENT_UP_TO_BOUND


def test_all_versus_nothing():
    v = bounded_difference(accept_all(("a",)), accept_none(("a",)), 2, 2)
    assert v.kind is Verdict.COUNTEREXAMPLE
    assert (v.witness.rows, v.witness.cols) == (1, 1)
    assert v.accepted_by_a and not v.accepted_by_b


def test_wide_versus_tall():
    v = bounded_difference(WIDE, TALL, 3, 3)
    assert v.witness == Word2D.unary(1, 2)
    assert v.accepted_by_a is True and v.accepted_by_b is False


def test_one_sided_difference():
    both = _dfa([("q0", "a", "R", "q1"), ("q1", "a", "D", "q2"), ("q2", "a", "R", "acc")],
                ("q0", "q1", "q2", "acc"))
    # every 2x3-or-larger word is wide, so both ⊆ WIDE
    assert bounded_difference(both, WIDE, 4, 4, Side.A_MINUS_B).kind is \
        Verdict.EQUIVALENT_UP_TO_BOUND
    v = bounded_difference(WIDE, both, 4, 4, Side.A_MINUS_B)
    assert v.kind is Verdict.COUNTEREXAMPLE and v.witness == Word2D.unary(1, 2)


def test_bounds_and_budget_guard():
    with pytest.raises(ValueError):
        bounded_difference(WIDE, TALL, 0, 3)
    a = accept_all(("a", "b"))
    assert bounded_difference(a, a, 5, 5, budget=1000).kind is Verdict.INFEASIBLE
    assert candidate_count(1, 4, 5) == 20
    assert candidate_count(2, 1, 2) == 2 + 4


def _first_difference(a, b, max_rows, max_cols, side=Side.SYMMETRIC):
    """Plain enumeration in (area, rows, lexicographic) order."""
    for rows, cols in shapes(max_rows, max_cols):
        for w in oracles.all_words(a.alphabet, rows, cols):
            in_a, in_b = oracles.accepts(a, w), oracles.accepts(b, w)
            if (in_a and not in_b) if side is Side.A_MINUS_B else in_a != in_b:
                return w
    return None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(list(Side)))
def test_bounded_difference_matches_plain_enumeration(seed, side):
    rng = random.Random(seed)
    alphabet = rng.choice([("a",), ("a", "b")])
    a = random_automaton(rng, TWO_NFA, rng.randint(2, 4), alphabet, density=0.5)
    b = random_automaton(rng, TWO_NFA, rng.randint(2, 4), alphabet, density=0.5)
    v = bounded_difference(a, b, 3, 3, side)
    expected = _first_difference(a, b, 3, 3, side)
    assert v.witness == expected
    if expected is not None:
        assert membership(a, v.witness) != membership(b, v.witness)


def test_exact_unary_one_state_machines():
    a = Automaton2D(("s",), ("a",), TWO_DFA, {}, "s", "s")
    v = decide_equivalence(a, accept_all(("a",)))
    assert v.kind is Verdict.EQUIVALENT and v.f_z == 20 and v.calls == 800


def test_exact_one_versus_two_states():
    # f(z) = 99 for one- and two-state unary machines: 9801 candidate words
    everything = accept_all(("a",))
    one_step = [_dfa([("q0", "a", d, "acc")], ("q0", "acc")) for d in "DR"]
    border = [_dfa([("q0", BORDER, d, "acc")], ("q0", "acc")) for d in "DR"]
    for b in one_step + border + [accept_none(("a",))]:
        v = decide_equivalence(everything, b)
        assert v.f_z == 99
        brute = _first_difference(everything, b, 3, 3)
        if brute is None:
            assert v.kind is Verdict.EQUIVALENT and v.calls == 2 * 99 * 99
        else:
            assert v.kind is Verdict.COUNTEREXAMPLE and v.witness == brute


def test_exact_needs_two_way_dfa():
    with pytest.raises(ClassError):
        decide_equivalence(WIDE.with_class(TWO_NFA), WIDE)
    with pytest.raises(ClassError):
        universality(example_machines()["three-way"])


def test_binary_machines_are_infeasible():
    a = _dfa([("q0", "a", "R", "acc")], ("q0", "acc"), ("a", "b"))
    v = decide_equivalence(a, a)
    assert v.kind is Verdict.INFEASIBLE and v.f_z == PumpingBound(2, 2, 2).f_z


def test_inclusion():
    v = decide_inclusion(accept_none(("a",)), TALL, budget=10 ** 7)
    assert v.f_z == PumpingBound(2, 3, 1).f_z
    assert v.kind in (Verdict.EQUIVALENT, Verdict.INFEASIBLE)


def test_universality():
    assert universality(accept_all(("a",))).kind is Verdict.EQUIVALENT
    v = universality(accept_none(("a",)))
    assert v.kind is Verdict.COUNTEREXAMPLE and v.witness == Word2D.unary(1, 1)
    v = universality(WIDE)
    assert v.kind is Verdict.COUNTEREXAMPLE and v.witness == Word2D.unary(1, 1)


# -- minimisation --------------------------------------------------------------------

def test_identical_states_merge():
    a = _dfa([("q0", "a", "R", "q1"), ("q0", "b", "R", "q2"),
              ("q1", "a", "D", "acc"), ("q2", "a", "D", "acc")],
             ("q0", "q1", "q2", "acc"), ("a", "b"))
    m = minimize(a)
    assert len(m.states) == 3
    assert bounded_difference(a, m, 4, 4).kind is Verdict.EQUIVALENT_UP_TO_BOUND


def test_minimal_machine_keeps_its_states():
    a = _dfa([("q0", "a", "R", "acc")], ("q0", "acc"))
    assert len(minimize(a).states) == 2


def test_direction_separates_states():
    # q1 and q2 agree on symbols and targets but move in different directions
    a = _dfa([("q0", "a", "R", "q1"), ("q0", "b", "D", "q2"),
              ("q1", "a", "R", "q3"), ("q2", "a", "D", "q3"),
              ("q3", BORDER, "R", "acc")],
             ("q0", "q1", "q2", "q3", "acc"), ("a", "b"))
    m = minimize(a)
    assert len(m.states) == 5
    assert bounded_difference(a, m, 4, 4).kind is Verdict.EQUIVALENT_UP_TO_BOUND


def test_dead_states_are_dropped():
    a = _dfa([("q0", "a", "R", "q1"), ("q0", "b", "R", "acc"), ("q1", "a", "R", "q1")],
             ("q0", "q1", "acc"), ("a", "b"))
    m = minimize(a)
    assert m.states == ("q0", "acc")
    nothing = _dfa([("q0", "a", "R", "q0")], ("q0", "acc"))
    assert minimize(nothing).delta == {}


def test_minimize_unary_exact():
    for a in random_corpus(8, 20, TWO_DFA, 3, alphabets=(("a",),), min_states=2):
        m = minimize(a)
        if len(a.states) * len(m.states) <= 2:
            assert decide_equivalence(a, m).kind is Verdict.EQUIVALENT


def test_minimize_needs_two_way_dfa():
    with pytest.raises(ClassError):
        minimize(WIDE.with_class(TWO_NFA))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_minimize_properties(seed):
    rng = random.Random(seed)
    alphabet = rng.choice([("a",), ("a", "b")])
    a = random_automaton(rng, TWO_DFA, rng.randint(2, 5), alphabet, density=0.6)
    m = minimize(a)
    assert len(m.states) <= len(a.states)
    assert len(minimize(m).states) == len(m.states)
    if len(alphabet) == 1:
        words = [Word2D.unary(r, c) for r, c in shapes(4, 4)]
    else:
        words = [Word2D(tuple(tuple(rng.choice(alphabet) for _ in range(c))
                              for _ in range(r)))
                 for r, c in (rng.choice(shapes(4, 4)) for _ in range(1000))]
    for w in words:
        assert oracles.accepts(a, w) == oracles.accepts(m, w)
