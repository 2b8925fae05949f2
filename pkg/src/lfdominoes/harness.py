"""Matches, seeded tournaments, the worked example, and file export."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path as FsPath
from typing import Optional, Union

from .agents import AgentSpec, agent_move, parse_agent
from .errors import DominoesError, MatchError, ParameterError, RuleError
from .evaluator import DEFAULT_CONFIG
from .rules import (
    Deal,
    Move,
    OpeningRule,
    Outcome,
    StarterFreeChoice,
    Tile,
    _play,
    apply_move,
    deal_random,
    initial_state,
    opening,
    parse_opening,
    standard_set,
    terminal_outcome,
    transcript_line,
)
from .solver import SolutionTrace, construct_solution
from .traceio import dumps, outcome_to_dict, trace_to_dict

EXAMPLE_DEAL = Deal(
    2,
    (Tile(0, 0), Tile(0, 1), Tile(2, 2)),
    (Tile(0, 2), Tile(1, 1), Tile(1, 2)),
)
EXAMPLE_BUDGET = 6  # twice the tiles per player


def deal_hash(deal: Deal) -> str:
    blob = json.dumps(deal.to_dict(), separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Transcript:
    deal: Deal
    opening: OpeningRule
    agents: tuple[str, str]
    moves: tuple[tuple[int, Move], ...]
    outcome: Outcome

    def lines(self) -> list[str]:
        starter, _ = opening(self.deal, self.opening)
        state = initial_state(self.deal, starter)
        out = []
        for player, move in self.moves:
            period = state.period
            state = apply_move(state, move)
            out.append(transcript_line(period, player, move, state.ends))
        return out

    def replay(self):
        """Final state obtained by re-applying every move through the rules."""
        starter, _ = opening(self.deal, self.opening)
        state = initial_state(self.deal, starter)
        for player, move in self.moves:
            if player != state.to_move:
                raise DominoesError(f"transcript has player {player} moving out of turn")
            state = apply_move(state, move)
        return state

    def to_dict(self) -> dict:
        return {
            "deal": self.deal.to_dict(),
            "opening": str(self.opening),
            "agents": list(self.agents),
            "moves": [[p, str(m)] for p, m in self.moves],
            "outcome": outcome_to_dict(self.outcome),
        }


def seat_rng(seed: int, seat: int, spec: AgentSpec) -> random.Random:
    # tied to the seat, not the agent, so side-swapped replays see the same stream
    return random.Random(f"{seed}/{seat}/{spec.seed}")


def run_match(
    deal: Deal,
    a1: AgentSpec,
    a2: AgentSpec,
    rule: OpeningRule = StarterFreeChoice(1),
    seed: int = 0,
) -> Transcript:
    specs = (a1, a2)
    rngs = (seat_rng(seed, 1, a1), seat_rng(seed, 2, a2))
    starter, forced = opening(deal, rule)
    state = initial_state(deal, starter)
    moves = []
    if forced is not None:
        moves.append((state.to_move, forced))
        state = _play(state, forced)
    while not state.is_terminal:
        i = state.to_move - 1
        try:
            move = agent_move(specs[i], state, rngs[i])
            nxt = apply_move(state, move)
        except DominoesError as exc:
            raise MatchError(state.period, state.to_move, exc) from exc
        moves.append((state.to_move, move))
        state = nxt
    return Transcript(deal, rule, (a1.label, a2.label), tuple(moves), terminal_outcome(state))


def resolve_opening(deal: Deal, rule: OpeningRule) -> OpeningRule:
    """The biggest-double rule falls back to a free choice by player 1 when nobody holds a double."""
    try:
        opening(deal, rule)
    except RuleError:
        return StarterFreeChoice(1)
    return rule


# --- tournaments -------------------------------------------------------------

@dataclass
class ExperimentConfig:
    max_pip: int = 3
    tiles_per_player: int = 4
    num_games: int = 100
    seed: int = 0
    opening: str = "free:1"
    agent1: str = "lf:c=8"
    agent2: str = "random"
    swap_sides: bool = False
    jobs: int = 1

    def validate(self) -> "ExperimentConfig":
        if self.num_games < 1:
            raise ParameterError("num_games must be >= 1")
        tiles = standard_set(self.max_pip)
        if self.tiles_per_player < 1 or 2 * self.tiles_per_player > len(tiles):
            raise ParameterError(
                f"{self.tiles_per_player} tiles each do not fit the double-{self.max_pip} set"
            )
        parse_opening(self.opening)
        parse_agent(self.agent1)
        parse_agent(self.agent2)
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("jobs")
        return d


@dataclass(frozen=True)
class GameRecord:
    index: int
    seed: int
    swapped: bool
    deal_hash: str
    opening: str
    moves: str
    outcome: str
    winner_seat: Optional[int]
    payoff_player1: int
    payoff_agent1: int


@dataclass(frozen=True)
class AgentStats:
    agent: str
    games: int
    wins: int
    draws: int
    losses: int
    mean_payoff: float
    payoff_variance: float
    win_rate: float
    win_rate_ci: tuple[float, float]


@dataclass(frozen=True)
class StatsReport:
    config: ExperimentConfig
    agents: tuple[AgentStats, AgentStats]
    records: tuple[GameRecord, ...] = field(repr=False)

    @property
    def mean_payoff(self) -> float:
        """Mean payoff to agent 1."""
        return self.agents[0].mean_payoff

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "agents": [asdict(a) | {"win_rate_ci": list(a.win_rate_ci)} for a in self.agents],
            "games": [asdict(r) for r in self.records],
        }


def win_rate_ci(wins: int, games: int, z: float = 1.96) -> tuple[float, float]:
    """Normal-approximation interval for a win probability, clipped to [0, 1]."""
    p = wins / games
    half = z * math.sqrt(p * (1 - p) / games)
    return max(0.0, p - half), min(1.0, p + half)


def summarize(label: str, payoffs: list[int]) -> AgentStats:
    n = len(payoffs)
    wins = sum(1 for x in payoffs if x > 0)
    draws = sum(1 for x in payoffs if x == 0)
    var = statistics.variance(payoffs) if n > 1 else 0.0
    return AgentStats(
        agent=label,
        games=n,
        wins=wins,
        draws=draws,
        losses=n - wins - draws,
        mean_payoff=statistics.fmean(payoffs),
        payoff_variance=float(var),
        win_rate=wins / n,
        win_rate_ci=win_rate_ci(wins, n),
    )


def _play_game(args) -> list[GameRecord]:
    config, index = args
    a1, a2 = parse_agent(config.agent1), parse_agent(config.agent2)
    game_seed = config.seed + index
    deal = deal_random(standard_set(config.max_pip), config.tiles_per_player, game_seed)
    rule = resolve_opening(deal, parse_opening(config.opening))
    seatings = [(False, a1, a2)] + ([(True, a2, a1)] if config.swap_sides else [])
    out = []
    for swapped, first, second in seatings:
        t = run_match(deal, first, second, rule, game_seed)
        p1 = t.outcome.payoff_to_player1
        out.append(GameRecord(
            index=index,
            seed=game_seed,
            swapped=swapped,
            deal_hash=deal_hash(deal),
            opening=str(rule),
            moves=";".join(f"{p}:{m}" for p, m in t.moves),
            outcome=t.outcome.kind,
            winner_seat=t.outcome.winner,
            payoff_player1=p1,
            payoff_agent1=-p1 if swapped else p1,
        ))
    return out


def run_tournament(config: ExperimentConfig) -> StatsReport:
    """Play ``num_games`` deals seeded ``seed + index``; optionally each twice with seats swapped."""
    config.validate()
    jobs = [(config, i) for i in range(config.num_games)]
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            batches = list(pool.map(_play_game, jobs, chunksize=16))
    else:
        batches = [_play_game(j) for j in jobs]
    records = tuple(r for batch in batches for r in batch)
    pay = [r.payoff_agent1 for r in records]
    return StatsReport(
        config,
        (summarize(config.agent1, pay), summarize(config.agent2, [-x for x in pay])),
        records,
    )


# --- the worked example --------------------------------------------------------

def trace_worked_example() -> SolutionTrace:
    return construct_solution(EXAMPLE_DEAL, EXAMPLE_BUDGET, EXAMPLE_BUDGET, StarterFreeChoice(1), DEFAULT_CONFIG)


# --- export --------------------------------------------------------------------

def to_json(obj) -> str:
    if isinstance(obj, SolutionTrace):
        return dumps(trace_to_dict(obj))
    if isinstance(obj, (StatsReport, Transcript)):
        return dumps(obj.to_dict())
    raise ParameterError(f"cannot export {type(obj).__name__}")


def to_csv(obj) -> str:
    buf = io.StringIO()
    if isinstance(obj, StatsReport):
        names = [f.name for f in fields(GameRecord)]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(names)
        for r in obj.records:
            w.writerow([getattr(r, n) for n in names])
    elif isinstance(obj, SolutionTrace):
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["period", "player", "move", "forced", "value", "depth", "node_count", "horizon_visible"])
        for r in obj.periods:
            w.writerow([r.period, r.player, str(r.move), r.forced, r.value, r.depth, r.node_count, r.horizon_visible])
    else:
        raise ParameterError(f"cannot export {type(obj).__name__} as csv")
    return buf.getvalue()


def export(obj, path: Union[str, FsPath], fmt: str = "json") -> FsPath:
    if fmt not in ("json", "csv"):
        raise ParameterError(f"unknown export format {fmt!r}")
    text = to_json(obj) if fmt == "json" else to_csv(obj)
    path = FsPath(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path
