"""Command-line front end: ``twodim <command> ...``.

Every command prints a plain-text report of ``key: value`` lines (or one
tab-separated line with ``--format tsv``) and exits with a code from the
table in ``twodim --help``.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import emptiness, equivalence, projection, reduction
from .core import (
    AutomatonClass,
    AutomatonError,
    ClassError,
    Ways,
    Word2D,
    accept_all,
    parse_automaton,
    parse_word,
    serialize_automaton,
    serialize_word,
)
from .corpus import random_automaton
from .run import RejectReport, accepting_trace, membership, trace

OK, NEGATIVE, BOUNDED, USAGE = 0, 1, 2, 3

EXIT_CODES = """\
exit codes:
  command                 0            1               2
  run                     ACCEPT       REJECT          -
  empty                   EMPTY        NONEMPTY        EMPTY-UP-TO
  equal/include/universal EQUIVALENT   COUNTEREXAMPLE  EQUIVALENT-UP-TO, INFEASIBLE
  lba-table               TABLE        NO-TABLE        BUDGET-EXCEEDED
  spectrum                DONE         -               INFEASIBLE
  other commands          DONE
  any command: 3 on usage, parse or validation errors

environment: TWODIM_BUDGET, TWODIM_UNARY_BOUND and TWODIM_SEED supply
defaults for --budget, --bound and --seed.
"""


@dataclass
class Report:
    fields: list[tuple[str, object]] = field(default_factory=list)
    blocks: list[tuple[str, list[str]]] = field(default_factory=list)
    code: int = OK

    def add(self, key: str, value: object) -> None:
        self.fields.append((key, value))

    def block(self, key: str, lines: list[str]) -> None:
        self.blocks.append((key, lines))

    def render(self, fmt: str) -> str:
        if fmt == "tsv":
            return "\t".join(str(v) for _, v in self.fields) + "\n"
        out = [f"{k}: {v}" for k, v in self.fields]
        for key, lines in self.blocks:
            out.append(f"{key}:")
            out.extend(lines)
        return "\n".join(out) + "\n"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int | None) -> int | None:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load_automaton(path: str):
    return parse_automaton(_read(path))


def _budget(args) -> int:
    budget = args.budget if args.budget is not None else _env_int(
        "TWODIM_BUDGET", equivalence.DEFAULT_BUDGET)
    if budget < 1:
        raise UsageError("budget must be positive")
    return budget


def _word_lines(w: Word2D) -> list[str]:
    return serialize_word(w).splitlines()


# -- commands ---------------------------------------------------------------------

def cmd_run(args, r: Report) -> None:
    a = _load_automaton(args.automaton)
    w = parse_word(_read(args.word), a.alphabet)
    accepted = membership(a, w)
    r.add("verdict", "ACCEPT" if accepted else "REJECT")
    r.add("size", f"{w.rows}x{w.cols}")
    r.code = OK if accepted else NEGATIVE
    if not (args.trace or args.plot):
        return
    t = None
    if a.deterministic:
        result = trace(a, w)
        if isinstance(result, RejectReport):
            r.add("halt", result.cause.value)
            r.add("final", str(result.final))
            t = result.trace
        else:
            t = result
    elif accepted:
        t = accepting_trace(a, w)
    if args.trace:
        r.add("steps", len(t) - 1 if t else "-")
        r.block("trace", [str(c) for c in t] if t else [])
    if args.plot and t:
        from .plotting import plot_trace
        r.add("plot", plot_trace(w, t, args.plot))


def cmd_empty(args, r: Report) -> None:
    a = _load_automaton(args.automaton)
    if a.ways is Ways.TWO:
        v = emptiness.emptiness_2w(a)
    elif a.ways is Ways.THREE and len(a.alphabet) == 1:
        bound = args.bound if args.bound is not None else _env_int("TWODIM_UNARY_BOUND", None)
        v = emptiness.emptiness_unary_3w(a, bound)
    else:
        raise ClassError(f"emptiness is implemented for two-way and unary three-way "
                         f"machines, not {a.cls}")
    r.add("verdict", v.kind.value)
    r.code = {emptiness.Verdict.EMPTY: OK, emptiness.Verdict.NONEMPTY: NEGATIVE,
              emptiness.Verdict.EMPTY_UP_TO_BOUND: BOUNDED}[v.kind]
    if v.bound is not None:
        r.add("bound", v.bound)
    if v.length is not None:
        r.add("length", v.length)
    if v.witness is not None:
        r.add("witness-size", f"{v.witness.rows}x{v.witness.cols}")
        if args.output:
            _write(args.output, serialize_word(v.witness))
            r.add("witness-file", args.output)
        r.block("witness", _word_lines(v.witness))


def _compare(args, r: Report, a, b, side) -> None:
    budget = _budget(args)
    if args.exact:
        decide = (equivalence.decide_equivalence if side is equivalence.Side.SYMMETRIC
                  else equivalence.decide_inclusion)
        v = decide(a, b, budget)
    else:
        v = equivalence.bounded_difference(a, b, args.rows, args.cols, side, budget)
    r.add("verdict", v.kind.value)
    r.add("bound", f"{v.max_rows}x{v.max_cols}")
    if v.f_z is not None:
        r.add("f(z)", v.f_z)
    r.add("membership-calls", v.calls)
    r.code = {equivalence.Verdict.EQUIVALENT: OK,
              equivalence.Verdict.COUNTEREXAMPLE: NEGATIVE}.get(v.kind, BOUNDED)
    if v.witness is not None:
        r.add("witness-size", f"{v.witness.rows}x{v.witness.cols}")
        r.add("accepted-by-a", v.accepted_by_a)
        r.add("accepted-by-b", v.accepted_by_b)
        if args.output:
            _write(args.output, serialize_word(v.witness))
            r.add("witness-file", args.output)
        r.block("witness", _word_lines(v.witness))


def cmd_equal(args, r: Report) -> None:
    _compare(args, r, _load_automaton(args.a), _load_automaton(args.b),
             equivalence.Side.SYMMETRIC)


def cmd_include(args, r: Report) -> None:
    _compare(args, r, _load_automaton(args.a), _load_automaton(args.b),
             equivalence.Side.A_MINUS_B)


def cmd_universal(args, r: Report) -> None:
    a = _load_automaton(args.automaton)
    _compare(args, r, a, accept_all(a.alphabet, a.ways, a.deterministic),
             equivalence.Side.SYMMETRIC)


def cmd_minimize(args, r: Report) -> None:
    a = _load_automaton(args.automaton)
    m = equivalence.minimize(a)
    r.add("states-before", len(a.states))
    r.add("states-after", len(m.states))
    text = serialize_automaton(m)
    if args.output:
        _write(args.output, text)
        r.add("output", args.output)
    else:
        r.block("automaton", text.splitlines())


def _project(args, r: Report, build) -> None:
    a = _load_automaton(args.automaton)
    if a.ways is not Ways.TWO:
        raise ClassError(f"projection NFAs are built for two-way machines, not {a.cls}")
    nfa = build(a)
    r.add("states", len(nfa.states))
    r.add("accepting", len(nfa.accepts))
    if args.list is not None:
        words = sorted(nfa.language(args.list), key=lambda w: (len(w), w))
        r.block("members", [" ".join(w) if w else "(empty)" for w in words])
    text = projection.serialize_nfa(nfa)
    if args.output:
        _write(args.output, text)
        r.add("output", args.output)
    else:
        r.block("nfa", text.splitlines())


def cmd_project_row(args, r: Report) -> None:
    _project(args, r, projection.row_projection_nfa)


def cmd_project_col(args, r: Report) -> None:
    _project(args, r, projection.col_projection_nfa)


def cmd_spectrum(args, r: Report) -> None:
    a = _load_automaton(args.automaton)
    axis = projection.Axis(args.axis)
    r.add("axis", axis.value)
    r.add("bound", f"{args.rows}x{args.cols}")
    try:
        s = projection.spectrum(a, axis, args.rows, args.cols, _budget(args))
    except AutomatonError as exc:
        if "budget" not in str(exc):
            raise
        r.add("verdict", "INFEASIBLE")
        r.code = BOUNDED
        return
    members = s.sorted_members()
    r.add("verdict", "DONE")
    r.add("count", len(members))
    r.add("members", " ".join(str(m) for m in members) or "-")
    if args.plot:
        from .plotting import plot_spectrum
        r.add("plot", plot_spectrum(s, args.plot))


def cmd_build(args, r: Report) -> None:
    c = projection.build_composite(args.symbol)
    r.add("gadget", args.gadget)
    r.add("class", c.cls)
    r.add("states", len(c.states))
    text = serialize_automaton(c)
    if args.output:
        _write(args.output, text)
        r.add("output", args.output)
    else:
        r.block("automaton", text.splitlines())


def cmd_reduce(args, r: Report) -> None:
    m = reduction.parse_lba(_read(args.file))
    checker = reduction.build_checker(m)
    r.add("class", checker.cls)
    r.add("states", len(checker.states))
    r.add("transitions", sum(1 for _ in checker.transitions()))
    r.add("pair-alphabet", len(m.pairs.chars))
    _write(args.output, serialize_automaton(checker))
    legend = Path(str(args.output) + ".legend")
    _write(legend, m.pairs.legend())
    r.add("output", args.output)
    r.add("legend", legend)


def cmd_encode_config(args, r: Report) -> None:
    c = reduction.parse_config(args.config)
    row = reduction.double_encode(c)
    r.add("state", c.state)
    r.add("head", c.head)
    r.add("width", len(c.tape))
    r.add("pairs", ", ".join(reduction.pair_str(p) for p in row))


def _split_input(text: str) -> list[str]:
    return text.split() if " " in text.strip() else list(text.strip())


def cmd_lba_table(args, r: Report) -> None:
    m = reduction.parse_lba(_read(args.file))
    word = _split_input(args.input)
    bad = [s for s in word if s not in m.input_alphabet]
    if bad:
        raise AutomatonError(f"input symbols {bad} not in the input alphabet")
    budget = args.budget if args.budget is not None else reduction.DEFAULT_STEP_BUDGET
    try:
        t = reduction.accepting_table(m, word, budget)
    except reduction.StepBudgetExceeded:
        r.add("verdict", "BUDGET-EXCEEDED")
        r.add("budget", budget)
        r.code = BOUNDED
        return
    if t is None:
        r.add("verdict", "NO-TABLE")
        r.code = NEGATIVE
        return
    r.add("verdict", "TABLE")
    r.add("size", f"{t.rows}x{t.cols}")
    if args.output:
        _write(args.output, serialize_word(t))
        r.add("output", args.output)
    r.block("configurations",
            [str(reduction.decode(row)) for row in reduction.table_rows(m, t)])


def cmd_generate(args, r: Report) -> None:
    seed = args.seed if args.seed is not None else _env_int("TWODIM_SEED", 0)
    cls = AutomatonClass.parse(args.cls)
    rng = random.Random(seed)
    a = random_automaton(rng, cls, args.states, args.alphabet.split(), args.density)
    text = serialize_automaton(a)
    r.add("seed", seed)
    r.add("class", cls)
    r.add("states", len(a.states))
    if args.output:
        _write(args.output, text)
        r.add("output", args.output)
    else:
        r.block("automaton", text.splitlines())


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twodim", description="Two-dimensional automata toolkit.",
                epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--format", choices=("text", "tsv"), default="text",
                   help="report layout (tsv: one tab-separated verdict line)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("run", help="simulate an automaton on a word")
    s.add_argument("automaton")
    s.add_argument("word")
    s.add_argument("--trace", action="store_true", help="print the run, one configuration per line")
    s.add_argument("--plot", metavar="PNG", help="draw the run over the word")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("empty", help="decide emptiness (2W, or unary 3W up to a bound)")
    s.add_argument("automaton")
    s.add_argument("--bound", type=_positive, help="largest column count tried for unary 3W")
    s.add_argument("-o", "--output", help="write the witness word here")
    s.set_defaults(func=cmd_empty)

    for name, func, help_ in (("equal", cmd_equal, "compare two languages"),
                              ("include", cmd_include, "check L(a) is contained in L(b)")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("a")
        s.add_argument("b")
        _comparison_flags(s)
        s.set_defaults(func=func)

    s = sub.add_parser("universal", help="compare against the accept-all machine")
    s.add_argument("automaton")
    _comparison_flags(s)
    s.set_defaults(func=cmd_universal)

    s = sub.add_parser("minimize", help="merge indistinguishable states of a 2DFA-2W")
    s.add_argument("automaton")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_minimize)

    for name, func in (("project-row", cmd_project_row), ("project-col", cmd_project_col)):
        s = sub.add_parser(name, help=f"{name.split('-')[1]} projection NFA of a 2W machine")
        s.add_argument("automaton")
        s.add_argument("-o", "--output")
        s.add_argument("--list", type=int, metavar="K", help="also list members up to length K")
        s.set_defaults(func=func)

    s = sub.add_parser("spectrum", help="projection members within a size bound")
    s.add_argument("automaton")
    s.add_argument("--axis", choices=("row", "col"), default="row")
    s.add_argument("--max-rows", "--rows", dest="rows", type=_positive, default=8)
    s.add_argument("--max-cols", "--cols", dest="cols", type=_positive, default=8)
    s.add_argument("--budget", type=int)
    s.add_argument("--plot", metavar="PNG", help="bar chart of member lengths")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("build", help="construct a named gadget")
    s.add_argument("gadget", choices=("composite",))
    s.add_argument("--symbol", default="a")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("reduce", help="build the table checker of an LBA")
    s.add_argument("kind", choices=("lba",))
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("encode-config", help='double-encode a configuration like "a b c_q d"')
    s.add_argument("config")
    s.set_defaults(func=cmd_encode_config)

    s = sub.add_parser("lba-table", help="computation table of an accepting LBA run")
    s.add_argument("file")
    s.add_argument("input", help='input word, e.g. "ab" or "a b"')
    s.add_argument("-o", "--output")
    s.add_argument("--budget", type=int, help="step budget")
    s.set_defaults(func=cmd_lba_table)

    s = sub.add_parser("generate", help="write a seeded random automaton")
    s.add_argument("--class", dest="cls", default="2NFA-2W")
    s.add_argument("--states", type=_positive, default=3)
    s.add_argument("--alphabet", default="a b")
    s.add_argument("--density", type=float, default=0.7)
    s.add_argument("--seed", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)
    return p


def _comparison_flags(s: argparse.ArgumentParser) -> None:
    s.add_argument("--exact", action="store_true",
                   help="search up to the pumping bound (deterministic 2W only)")
    s.add_argument("--max-rows", "--rows", dest="rows", type=_positive, default=4)
    s.add_argument("--max-cols", "--cols", dest="cols", type=_positive, default=4)
    s.add_argument("--budget", type=int, help="membership-call budget")
    s.add_argument("-o", "--output", help="write the counterexample here")


def dispatch(argv: list[str]) -> tuple[int, str]:
    """Run one command; returns the exit code and the rendered report."""
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report()
    report.add("command", args.command)
    try:
        args.func(args, report)
    except (AutomatonError, UsageError, OSError, ValueError) as exc:
        return USAGE, f"error: {exc}\n"
    return report.code, report.render(args.format)


def main(argv: list[str] | None = None) -> int:
    try:
        code, text = dispatch(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    stream = sys.stderr if code == USAGE and text.startswith("error:") else sys.stdout
    try:
        stream.write(text)
    except UnicodeEncodeError:
        stream.buffer.write(text.encode("utf-8"))
    stream.flush()
    return code
