"""Subgame-perfect play over budget-bounded subtrees.

Each decision expands the subtree the mover can afford, values its leaves
with ``phi`` from the mover's point of view, and backs values up assuming the
opponent minimizes them. Ties go to the child that leaves the opponent the
fewest placements, then to the earliest move in ``legal_moves`` order.

``construct_solution`` chains those decisions forward into a trace, and
records for every available action the forecast that is correct under the
strategy profile actually in play.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ParameterError, StateError, TraceError
from .evaluator import DEFAULT_CONFIG, GuidelineConfig, guide_block_opponent, phi
from .rules import (
    Deal,
    GameState,
    Move,
    OpeningRule,
    Outcome,
    StarterFreeChoice,
    _play,
    children,
    initial_state,
    legal_moves,
    opening,
    terminal_outcome,
    transcript_line,
)
from .tree import (
    UNLIMITED,
    Budget,
    History,
    Path,
    Subtree,
    check_budget,
    expand_within_budget,
    follow,
)


@dataclass
class Policy:
    """Chosen move and backed-up value per (position, remaining depth).

    Values are always to the subtree's root player.
    """

    root_player: int
    depth: int
    table: dict = field(default_factory=dict)

    def entry(self, state: GameState, remaining: int) -> tuple[Move, object]:
        return self.table[(state.key(), remaining)]

    def line(self, state: GameState, remaining: int) -> list[tuple[int, Move]]:
        """Principal continuation from ``state`` with ``remaining`` plies of vision left."""
        out = []
        while remaining > 0 and not state.is_terminal:
            move, _ = self.table[(state.key(), remaining)]
            out.append((state.to_move, move))
            state = _play(state, move)
            remaining -= 1
        return out


@dataclass(frozen=True)
class SPEResult:
    root: GameState
    move: Move
    value: object
    action_values: tuple[tuple[Move, object], ...]
    policy: Policy

    @property
    def principal(self) -> list[tuple[int, Move]]:
        if self.policy.depth == 0:
            return [(self.root.to_move, self.move)]
        return self.policy.line(self.root, self.policy.depth)


def _search(state: GameState, depth: int, root_player: int, config: GuidelineConfig, table: dict):
    key = (state.key(), depth)
    hit = table.get(key)
    if hit is not None:
        return hit[1]
    if depth == 0 or state.is_terminal:
        return phi(state, root_player, config).value
    sign = 1 if state.to_move == root_player else -1
    best = None
    for move, child in children(state):
        v = _search(child, depth - 1, root_player, config, table)
        rank = (sign * v, guide_block_opponent(child, state.to_move))
        if best is None or rank > best[0]:
            best = (rank, move, v)
    table[key] = (best[1], best[2])
    return best[2]


def spe(subtree: Subtree, config: GuidelineConfig = DEFAULT_CONFIG) -> SPEResult:
    root = subtree.root
    player = root.to_move
    policy = Policy(player, subtree.depth)
    moves = legal_moves(root)
    if subtree.depth == 0:
        # nothing beyond the root is visible: every action looks the same
        v = phi(root, player, config).value
        return SPEResult(root, moves[0], v, tuple((m, v) for m in moves), policy)
    values = []
    for move, child in children(root):
        values.append((move, _search(child, subtree.depth - 1, player, config, policy.table)))
    _search(root, subtree.depth, player, config, policy.table)
    move, value = policy.table[(root.key(), subtree.depth)]
    return SPEResult(root, move, value, tuple(values), policy)


@dataclass(frozen=True)
class Forecast:
    period: int
    player: int
    depth: int
    budget: Budget
    node_count: int
    horizon_visible: bool
    predictions: tuple[tuple[Move, tuple[tuple[int, Move], ...]], ...]
    recalled: Optional[Path] = None

    def prediction(self, action: Move) -> tuple[tuple[int, Move], ...]:
        for a, p in self.predictions:
            if a == action:
                return p
        raise KeyError(action)


@dataclass(frozen=True)
class Decision:
    move: Move
    value: object
    depth: int
    node_count: int
    horizon_visible: bool


def _decide(state: GameState, c: Budget, config: GuidelineConfig) -> tuple[Decision, SPEResult]:
    subtree = expand_within_budget(state, c)
    result = spe(subtree, config)
    return Decision(result.move, result.value, subtree.depth, subtree.node_count,
                    subtree.horizon_visible), result


_CACHE: dict = {}
_CACHE_LIMIT = 500_000


def decide(state: GameState, c: Budget, config: GuidelineConfig = DEFAULT_CONFIG) -> Decision:
    """Move chosen at ``state``; a pure function of (position, c, config), hence cached."""
    if state.is_terminal:
        raise StateError("no decision in a terminal state")
    key = (state.key(), c, config)
    hit = _CACHE.get(key)
    if hit is None:
        if len(_CACHE) >= _CACHE_LIMIT:
            _CACHE.clear()
        hit = _CACHE[key] = _decide(state, c, config)[0]
    return hit


def limited_forecast_decision(
    state: GameState,
    c: Budget,
    recall: Budget = UNLIMITED,
    config: GuidelineConfig = DEFAULT_CONFIG,
    history: Optional[Path] = None,
) -> tuple[Move, Forecast]:
    """Decide at ``state`` using only the subtree affordable with budget ``c``.

    The returned forecast holds, for every legal action, the continuation the
    player foresees inside her own subtree. The history is cut to the last
    ``recall`` moves and kept for reference only: the decision depends on the
    position alone.
    """
    if state.is_terminal:
        raise StateError("no decision in a terminal state")
    c = check_budget(c)
    dec, result = _decide(state, c, config)
    preds = []
    for move, child in children(state):
        preds.append((move, tuple(result.policy.line(child, dec.depth - 1))))
    recalled = History(history, recall).recalled() if history is not None else None
    forecast = Forecast(state.period, state.to_move, dec.depth, c, dec.node_count,
                        dec.horizon_visible, tuple(preds), recalled)
    return dec.move, forecast


@dataclass(frozen=True)
class StrategyProfile:
    """Both players' limited-forecast decision rules."""

    budgets: tuple[Budget, Budget]
    configs: tuple[GuidelineConfig, GuidelineConfig] = (DEFAULT_CONFIG, DEFAULT_CONFIG)

    def decision(self, state: GameState) -> Decision:
        i = state.to_move - 1
        return decide(state, self.budgets[i], self.configs[i])

    def __call__(self, state: GameState) -> Move:
        return self.decision(state).move


# --- forward construction ----------------------------------------------------

@dataclass(frozen=True)
class PeriodRecord:
    period: int
    player: int
    move: Move
    forced: bool = False
    value: object = None
    depth: int = 0
    node_count: int = 0
    horizon_visible: bool = False
    predictions: tuple[tuple[Move, tuple[tuple[int, Move], ...]], ...] = ()

    @property
    def forecast(self) -> Forecast:
        return Forecast(self.period, self.player, self.depth, UNLIMITED, self.node_count,
                        self.horizon_visible, self.predictions)


@dataclass(frozen=True)
class SolutionTrace:
    deal: Deal
    opening: OpeningRule
    budgets: tuple[Budget, Budget]
    recalls: tuple[Budget, Budget]
    configs: tuple[GuidelineConfig, GuidelineConfig]
    periods: tuple[PeriodRecord, ...]
    outcome: Optional[Outcome]

    @property
    def profile(self) -> StrategyProfile:
        return StrategyProfile(self.budgets, self.configs)

    def start_state(self) -> GameState:
        starter, _ = opening(self.deal, self.opening)
        return initial_state(self.deal, starter)

    @property
    def path(self) -> Path:
        return Path(self.start_state(), tuple((r.player, r.move) for r in self.periods))

    def moves(self) -> list[Move]:
        return [r.move for r in self.periods]

    def depths(self, player: int) -> list[int]:
        return [r.depth for r in self.periods if r.player == player and not r.forced]

    def transcript(self) -> list[str]:
        lines = []
        for rec, state in zip(self.periods, self.path.states()[1:]):
            lines.append(transcript_line(rec.period, rec.player, rec.move, state.ends))
        return lines


def _consistent_predictions(state: GameState, profile: StrategyProfile, depth: int):
    return tuple(
        (move, follow(profile, child, depth).moves) for move, child in children(state)
    )


def construct_solution(
    deal: Deal,
    c1: Budget,
    c2: Budget,
    rule: OpeningRule = StarterFreeChoice(1),
    config: GuidelineConfig = DEFAULT_CONFIG,
    config2: Optional[GuidelineConfig] = None,
    recalls: tuple[Budget, Budget] = (UNLIMITED, UNLIMITED),
) -> SolutionTrace:
    if not isinstance(deal, Deal):
        raise ParameterError("construct_solution needs a Deal")
    budgets = (check_budget(c1), check_budget(c2))
    configs = (config, config2 if config2 is not None else config)
    profile = StrategyProfile(budgets, configs)
    starter, forced = opening(deal, rule)
    state = initial_state(deal, starter)
    records = []
    if forced is not None:
        records.append(PeriodRecord(state.period, state.to_move, forced, forced=True))
        state = _play(state, forced)
    while not state.is_terminal:
        dec = profile.decision(state)
        records.append(PeriodRecord(
            state.period, state.to_move, dec.move, False, dec.value, dec.depth,
            dec.node_count, dec.horizon_visible,
            _consistent_predictions(state, profile, dec.depth),
        ))
        state = _play(state, dec.move)
    return SolutionTrace(deal, rule, budgets, recalls, configs, tuple(records),
                         terminal_outcome(state))


# --- solution checkers --------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    period: Optional[int] = None
    action: Optional[Move] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        where = f"period {self.period}" + (f", action {self.action}" if self.action else "")
        return f"violation at {where}: {self.message}"


def _replay(trace: SolutionTrace):
    """Yield (record, state before the record's move); raises TraceError."""
    try:
        state = trace.start_state()
    except Exception as exc:
        raise TraceError(f"cannot set up the opening: {exc}") from exc
    _, forced = opening(trace.deal, trace.opening)
    for i, rec in enumerate(trace.periods):
        if state.is_terminal:
            raise TraceError(f"period {rec.period} recorded after the game ended")
        if rec.period != state.period or rec.player != state.to_move:
            raise TraceError(f"period {rec.period}: expected player {state.to_move} at period {state.period}")
        if rec.move not in legal_moves(state):
            raise TraceError(f"period {rec.period}: illegal move {rec.move}")
        if rec.forced and not (i == 0 and forced == rec.move):
            raise TraceError(f"period {rec.period}: only the opening can be forced")
        yield rec, state
        state = _play(state, rec.move)
    if trace.outcome is not None and terminal_outcome(state) != trace.outcome:
        raise TraceError("recorded outcome does not match the replayed final state")


def check_justified(trace: SolutionTrace) -> CheckResult:
    """Every move must be the tie-broken SPE choice of the mover's budgeted subtree."""
    for rec, state in _replay(trace):
        if rec.forced:
            continue
        i = rec.player - 1
        dec, result = _decide(state, trace.budgets[i], trace.configs[i])
        if rec.depth != dec.depth:
            return CheckResult(False, rec.period, None,
                               f"recorded depth {rec.depth}, budget allows {dec.depth}")
        if rec.move != dec.move:
            chosen = dict(result.action_values).get(rec.move)
            return CheckResult(False, rec.period, rec.move,
                               f"value {chosen} against {dec.value} for {dec.move}")
    return CheckResult(True)


def check_consistent(trace: SolutionTrace) -> CheckResult:
    """Every prediction, on and off the realized line, must equal the truncated continuation."""
    profile = trace.profile
    for rec, state in _replay(trace):
        if rec.forced:
            continue
        recorded = dict(rec.predictions)
        actions = legal_moves(state)
        if sorted(recorded, key=Move.sort_key) != actions:
            return CheckResult(False, rec.period, None, "forecast does not cover exactly the legal actions")
        for move in actions:
            expected = follow(profile, _play(state, move), rec.depth).moves
            if tuple(recorded[move]) != expected:
                return CheckResult(False, rec.period, move, "prediction differs from the continuation path")
    return CheckResult(True)


def check_solution(trace: SolutionTrace) -> tuple[CheckResult, CheckResult]:
    return check_justified(trace), check_consistent(trace)
