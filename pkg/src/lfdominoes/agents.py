"""Agents for head-to-head play: limited forecast, exact, greedy and random."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParameterError, StateError
from .evaluator import DEFAULT_CONFIG, GuidelineConfig
from .oracle import DEFAULT_CAP, Oracle
from .rules import GameState, Move, legal_moves
from .solver import decide, spe
from .tree import UNLIMITED, Budget, Subtree, check_budget, count_level_nodes, format_budget, parse_budget

KINDS = ("lf", "random", "perfect", "greedy")


@dataclass(frozen=True)
class AgentSpec:
    kind: str
    budget: Budget = UNLIMITED
    recall: Budget = UNLIMITED
    config: GuidelineConfig = field(default=DEFAULT_CONFIG)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown agent kind {self.kind!r}")
        check_budget(self.budget)

    @property
    def label(self) -> str:
        if self.kind == "lf":
            parts = [f"c={format_budget(self.budget)}"]
            if self.recall != UNLIMITED:
                parts.append(f"N={format_budget(self.recall)}")
            parts += _weight_parts(self.config)
            return "lf:" + ",".join(parts)
        if self.kind == "greedy" and self.config != DEFAULT_CONFIG:
            return "greedy:" + ",".join(_weight_parts(self.config))
        if self.kind == "random" and self.seed:
            return f"random:seed={self.seed}"
        return self.kind

    def __str__(self) -> str:
        return self.label


_SHORT = {"shed_pips": "shed", "block_opponent": "block", "repeat_strong_number": "repeat"}


def _weight_parts(config: GuidelineConfig) -> list[str]:
    if config == DEFAULT_CONFIG:
        return []
    return [f"w.{_SHORT[k]}={float(w):g}" for k, w in config.weights.items()]


def parse_agent(text: str) -> AgentSpec:
    """Parse ``lf:c=8,N=inf,w.shed=1,w.block=0.5``, ``random``, ``perfect``, ``greedy``."""
    kind, _, rest = text.strip().partition(":")
    if kind not in KINDS:
        raise ParameterError(f"unknown agent {text!r}; expected one of {', '.join(KINDS)}")
    opts = {}
    for item in filter(None, rest.split(",")):
        k, eq, v = item.partition("=")
        if not eq:
            raise ParameterError(f"expected key=value in agent spec, got {item!r}")
        opts[k.strip()] = v.strip()
    budget = recall = UNLIMITED
    weights = {}
    seed = 0
    try:
        for k, v in opts.items():
            if k == "c" and kind == "lf":
                budget = parse_budget(v)
            elif k == "N" and kind == "lf":
                recall = parse_budget(v)
            elif k.startswith("w.") and kind in ("lf", "greedy"):
                weights[k[2:]] = float(v)
            elif k == "seed":
                seed = int(v)
            else:
                raise ParameterError(f"option {k!r} not valid for agent {kind!r}")
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"bad value in agent spec {text!r}") from exc
    if kind == "lf" and "c" not in opts:
        raise ParameterError("lf agents need a capability, e.g. lf:c=8")
    if weights:
        base = {"shed": 1.0} if "shed" not in weights else {}
        config = GuidelineConfig({**base, **weights})
    else:
        config = DEFAULT_CONFIG
    return AgentSpec(kind, budget, recall, config, seed)


_ORACLE: Optional[Oracle] = None


def shared_oracle() -> Oracle:
    global _ORACLE
    if _ORACLE is None:
        _ORACLE = Oracle(DEFAULT_CAP)
    return _ORACLE


def greedy_move(state: GameState, config: GuidelineConfig = DEFAULT_CONFIG) -> Move:
    """Best immediate child by ``phi``, with the solver's tie-break."""
    n = count_level_nodes(state, 1)[0]
    return spe(Subtree(state, 1, (n,), UNLIMITED, False), config).move


def agent_move(spec: AgentSpec, state: GameState, rng: Optional[random.Random] = None) -> Move:
    if state.is_terminal:
        raise StateError("no move in a terminal state")
    if spec.kind == "lf":
        return decide(state, spec.budget, spec.config).move
    if spec.kind == "greedy":
        return greedy_move(state, spec.config)
    if spec.kind == "perfect":
        return shared_oracle().best_move(state)
    if rng is None:
        raise ParameterError("random agents need an rng")
    moves = legal_moves(state)
    return moves[rng.randrange(len(moves))]
