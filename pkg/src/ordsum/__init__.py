"""Ordinals below epsilon_0 and infinite natural sums of omega-sequences."""

from .errors import DomainError, OrdinalError, ParseError
from .notation import (
    format_ordinal,
    format_sequence,
    format_tree,
    parse_expression,
    parse_ordinal,
    parse_sequence,
    parse_tree,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    classical_add,
    compare,
    fundamental_sequence,
    hat,
    left_subtract,
    nat,
    natural_product,
    natural_sum,
    omega_power,
    sup_plus,
)
from .realize import (
    BlockPlan,
    check_ormf,
    finite_set_F,
    locate,
    offender_set,
    realize,
    stacked_plan,
    truncation,
)
from .sequence import Approach, Const, Move, OmegaSequence, apply_move, normalize, random_descent
from .sums import (
    LEAF,
    Leaf,
    Node,
    SumDecomposition,
    decompose,
    finite_natural_sum,
    sum_h,
    sum_s,
    sum_s1,
    sum_s2,
    tree_size,
)
from .verify import (
    PropertyReport,
    approach_move,
    check_descent,
    impossibility_fixtures,
    minimality_suite,
    rank_oracle_finite,
)
