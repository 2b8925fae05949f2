"""Two-player draw dominoes with limited-forecast subgame-perfect play."""

from .errors import (
    CapacityError,
    DominoesError,
    MatchError,
    MoveError,
    ParameterError,
    PathError,
    RuleError,
    StateError,
    TraceError,
)
from .evaluator import DEFAULT_CONFIG, GuidelineConfig, LeafValue, phi
from .oracle import Oracle, full_tree_spe
from .rules import (
    PASS,
    BiggestDoubleForced,
    Deal,
    GameState,
    Move,
    Outcome,
    StarterFreeChoice,
    Tile,
    apply_move,
    deal_random,
    initial_state,
    legal_moves,
    opening,
    pip_sum,
    place,
    standard_set,
    terminal_outcome,
)
from .solver import (
    SolutionTrace,
    check_consistent,
    check_justified,
    construct_solution,
    limited_forecast_decision,
    spe,
)
from .tree import UNLIMITED, Path, Subtree, count_level_nodes, expand_within_budget

__version__ = "0.1.0"
