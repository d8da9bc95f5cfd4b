"""Two-dimensional automata: simulation, decision procedures and constructions."""

from .core import (
    BORDER,
    AlphabetError,
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
    accept_none,
    onedim_membership,
    parse_automaton,
    parse_word,
    serialize_automaton,
    serialize_word,
    transpose,
    validate,
)
from .emptiness import (
    EmptinessVerdict,
    eliminate_stay,
    emptiness_2w,
    emptiness_unary_3w,
    to_one_dim,
)
from .equivalence import (
    EquivalenceVerdict,
    Side,
    bounded_difference,
    decide_equivalence,
    decide_inclusion,
    minimize,
    pumping_bound,
    universality,
)
from .projection import (
    Axis,
    OneDimNFA,
    build_composite,
    col_projection_nfa,
    row_projection_2way_unary3w,
    row_projection_nfa,
    spectrum,
)
from .reduction import (
    LBAConfig,
    LBASpec,
    accepting_table,
    build_checker,
    decode,
    double_encode,
    is_valid_table,
    lba_step,
)
from .run import Configuration, Trace, accepting_trace, membership, step, trace

__version__ = "0.1.0"

__all__ = [
    "AlphabetError",
    "Automaton2D",
    "AutomatonClass",
    "AutomatonError",
    "Axis",
    "BORDER",
    "ClassError",
    "Configuration",
    "Direction",
    "EmptinessVerdict",
    "EquivalenceVerdict",
    "LBAConfig",
    "LBASpec",
    "OneDimNFA",
    "OneDimTwoWayNFA",
    "ParseError",
    "Side",
    "Step",
    "Trace",
    "ValidationError",
    "Ways",
    "Word2D",
    "accept_all",
    "accept_none",
    "accepting_table",
    "accepting_trace",
    "bounded_difference",
    "build_checker",
    "build_composite",
    "col_projection_nfa",
    "decide_equivalence",
    "decide_inclusion",
    "decode",
    "double_encode",
    "eliminate_stay",
    "emptiness_2w",
    "emptiness_unary_3w",
    "is_valid_table",
    "lba_step",
    "membership",
    "minimize",
    "onedim_membership",
    "parse_automaton",
    "parse_word",
    "pumping_bound",
    "row_projection_2way_unary3w",
    "row_projection_nfa",
    "serialize_automaton",
    "serialize_word",
    "spectrum",
    "step",
    "to_one_dim",
    "trace",
    "transpose",
    "universality",
    "validate",
]
