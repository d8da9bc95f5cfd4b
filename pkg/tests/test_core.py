import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from twodim.core import (
    BORDER,
    Automaton2D,
    AutomatonClass,
    AutomatonError,
    ClassError,
    Direction,
    OneDimTwoWayNFA,
    ParseError,
    Step,
    ValidationError,
    Ways,
    Word2D,
    accept_all,
    onedim_membership,
    parse_automaton,
    parse_word,
    serialize_automaton,
    serialize_word,
    shapes,
    transpose,
    validate,
)
from twodim.corpus import example_machines, random_automaton, random_corpus

TWO_NFA = AutomatonClass(Ways.TWO, False)

THREE_STATE = """\
class: 2NFA-2W
alphabet: a b
states: q0 q1 acc
initial: q0
accept: acc
trans: q0 a R q1
trans: q0 a D q0
trans: q1 b D acc
trans: q1 # D acc
"""


def test_class_names_round_trip():
    for ways in Ways:
        for det in (True, False):
            cls = AutomatonClass(ways, det)
            assert AutomatonClass.parse(str(cls)) == cls
    assert str(AutomatonClass(Ways.THREE, True)) == "2DFA-3W"
    with pytest.raises(AutomatonError):
        AutomatonClass.parse("2XFA-2W")


def test_direction_sets():
    assert set(Ways.FOUR.directions) == set(Direction)
    assert set(Ways.THREE.directions) == {Direction.D, Direction.L, Direction.R}
    assert set(Ways.TWO.directions) == {Direction.D, Direction.R}
    assert [d.value for d in Direction] == ["U", "D", "L", "R"]


def test_parse_three_state_machine():
    a = parse_automaton(THREE_STATE)
    assert len(a.states) == 3
    assert set(a.moves("q0", "a")) == {("q1", Direction.R), ("q0", Direction.D)}
    assert parse_automaton(serialize_automaton(a)) == a
    assert serialize_automaton(parse_automaton(serialize_automaton(a))) == serialize_automaton(a)


def test_direction_not_permitted():
    src = THREE_STATE.replace("2NFA-2W", "2DFA-2W").replace("trans: q0 a D q0\n", "") \
        .replace("q0 a R q1", "q0 a L q1")
    with pytest.raises(ValidationError, match="direction L not permitted"):
        parse_automaton(src)


def test_nondeterministic_choice_in_dfa():
    src = THREE_STATE.replace("2NFA-2W", "2DFA-2W")
    with pytest.raises(ValidationError, match="nondeterministic choice in deterministic automaton"):
        parse_automaton(src)


def test_syntax_error_has_line_number():
    with pytest.raises(ParseError) as exc:
        parse_automaton(THREE_STATE + "trans: q0 a\n")
    assert exc.value.line == 10
    with pytest.raises(ParseError, match="unknown direction"):
        parse_automaton(THREE_STATE + "trans: q0 b X q1\n")
    with pytest.raises(ParseError, match="missing"):
        parse_automaton("class: 2NFA-2W\n")


def test_unknown_state_and_symbol():
    with pytest.raises(ValidationError):
        parse_automaton(THREE_STATE + "trans: q0 b R nowhere\n")
    with pytest.raises(ValidationError):
        parse_automaton(THREE_STATE + "trans: q0 c R q1\n")


def test_validate_reports_accept_state_transition():
    a = Automaton2D(("q0", "acc"), ("a",), TWO_NFA,
                    {("acc", "a"): (("q0", Direction.R),)}, "q0", "acc")
    problems = validate(a)
    assert len(problems) == 1 and "acc" in problems[0]
    assert validate(parse_automaton(THREE_STATE)) == []


def test_validate_three_way_up_move():
    a = Automaton2D(("q0", "acc"), ("a",), AutomatonClass(Ways.THREE, True),
                    {("q0", "a"): (("acc", Direction.U),)}, "q0", "acc")
    problems = validate(a)
    assert len(problems) == 1 and "q0" in problems[0] and "U" in problems[0]


def test_validate_border_in_alphabet():
    a = Automaton2D(("q0", "acc"), ("a", BORDER), TWO_NFA, {}, "q0", "acc")
    assert validate(a)


def test_word_frame():
    w = Word2D.from_rows(["ab", "ba"])
    assert (w.rows, w.cols) == (2, 2)
    assert w.at(1, 2) == "b"
    for r, c in [(0, 0), (0, 1), (3, 3), (1, 3), (3, 1)]:
        assert w.at(r, c) == BORDER
    with pytest.raises(IndexError):
        w.at(4, 1)
    with pytest.raises(IndexError):
        w.at(-1, 0)
    with pytest.raises(AutomatonError):
        Word2D.from_rows(["ab", "a"])


def test_word_file_format():
    w = parse_word("ab\nba\n")
    assert serialize_word(w) == "ab\nba\n"
    assert parse_word("unary 3x4") == Word2D.unary(3, 4)
    assert parse_word("unary 2x2", ("x",)) == Word2D.unary(2, 2, "x")
    with pytest.raises(ParseError):
        parse_word("ab\na\n")
    with pytest.raises(ParseError):
        parse_word("a#\n")
    with pytest.raises(ParseError):
        parse_word("ac\n", ("a", "b"))


@given(st.lists(st.text("abc", min_size=3, max_size=3), min_size=1, max_size=4))
def test_word_round_trip(rows):
    w = Word2D.from_rows(rows)
    assert parse_word(serialize_word(w)) == w
    assert w.transpose().transpose() == w


def test_shapes_order():
    assert shapes(2, 3) == [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (2, 3)]


def test_transpose_single_move():
    a = Automaton2D(("q0", "q1"), ("a",), TWO_NFA, {("q0", "a"): (("q1", Direction.D),)},
                    "q0", "q1")
    assert transpose(a).moves("q0", "a") == (("q1", Direction.R),)
    assert transpose(transpose(a)) == a


def test_transpose_rejects_three_way():
    with pytest.raises(ClassError):
        transpose(example_machines()["three-way"])


def test_transpose_four_way_swaps_left_and_up():
    a = Automaton2D(("q0", "q1"), ("a",), AutomatonClass(Ways.FOUR, False),
                    {("q0", "a"): (("q1", Direction.L), ("q1", Direction.U))}, "q0", "q1")
    assert set(transpose(a).moves("q0", "a")) == {("q1", Direction.U), ("q1", Direction.L)}


def test_transpose_preserves_membership():
    for a in random_corpus(31, 50, TWO_NFA, 4, min_states=2, density=0.6):
        t = transpose(a)
        assert len(t.states) == len(a.states)
        for rows, cols in shapes(3, 3):
            for w in oracles.all_words(a.alphabet, rows, cols):
                assert oracles.accepts(a, w) == oracles.accepts(t, w.transpose())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(list(Ways)), st.booleans(),
       st.integers(1, 5), st.sampled_from([("a",), ("a", "b"), ("0", "1", "2")]))
def test_serialize_fixed_point(seed, ways, det, n, alphabet):
    a = random_automaton(random.Random(seed), AutomatonClass(ways, det), n, alphabet)
    assert validate(a) == []
    text = serialize_automaton(a)
    assert parse_automaton(text) == a
    assert serialize_automaton(parse_automaton(text)) == text


def test_accept_all_is_valid():
    a = accept_all(("a", "b"))
    assert a.initial == a.accept
    assert validate(a) == []


def test_onedim_stay_flag():
    delta = {("q0", "a"): (("q1", Step.STAY),)}
    with pytest.raises(AutomatonError):
        OneDimTwoWayNFA(("q0", "q1"), ("a",), delta, "q0", "q1")
    b = OneDimTwoWayNFA(("q0", "q1"), ("a",), delta, "q0", "q1", allow_stay=True)
    assert b.has_stay()


def test_onedim_membership_examples():
    everything = OneDimTwoWayNFA(("q",), ("a",), {}, "q", "q")
    assert all(onedim_membership(everything, n) for n in range(6))
    nothing = OneDimTwoWayNFA(("q", "acc"), ("a",), {}, "q", "acc")
    assert not any(onedim_membership(nothing, n) for n in range(6))
    # one right move over a, then # must follow
    one = OneDimTwoWayNFA(("q", "r", "acc"), ("a",),
                          {("q", "a"): (("r", Step.RIGHT),),
                           ("r", BORDER): (("acc", Step.LEFT),)}, "q", "acc")
    assert [n for n in range(6) if onedim_membership(one, n)] == [1]
    assert onedim_membership(one, ["a"])
    with pytest.raises(ValueError):
        onedim_membership(one, -1)
