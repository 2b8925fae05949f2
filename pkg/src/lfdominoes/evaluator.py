"""Leaf valuation for limited-forecast search.

Terminal leaves get their exact payoff. Other leaves get a weighted sum of
folklore guidelines, all measured in pips so both kinds of values can be
mixed in one backward induction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import ParameterError
from .rules import GameState, other, pip_sum, place_moves, terminal_outcome

GUIDES = ("shed_pips", "block_opponent", "repeat_strong_number")
_ALIASES = {"shed": "shed_pips", "block": "block_opponent", "repeat": "repeat_strong_number"}

Number = Union[int, Fraction]


def guide_shed_pips(state: GameState, player: int) -> int:
    """Opponent pips minus own pips: get rid of heavy tiles."""
    return pip_sum(state.hand_of(other(player))) - pip_sum(state.hand_of(player))


def guide_block_opponent(state: GameState, player: int) -> int:
    """Minus the number of placements the opponent has on the current ends."""
    return -len(place_moves(state.hand_of(other(player)), state.ends))


def guide_repeat_strong_number(state: GameState, player: int) -> int:
    """Number of own placements available on the current ends."""
    return len(place_moves(state.hand_of(player), state.ends))


_GUIDE_FUNCS = {
    "shed_pips": guide_shed_pips,
    "block_opponent": guide_block_opponent,
    "repeat_strong_number": guide_repeat_strong_number,
}


def _exact(w) -> Number:
    if isinstance(w, bool):
        raise ParameterError("weights must be numbers")
    # float weights go through their repr so 0.1 means 1/10
    q = Fraction(str(w)) if isinstance(w, float) else Fraction(w)
    return int(q) if q.denominator == 1 else q


@dataclass(frozen=True)
class GuidelineConfig:
    weights: dict = field(default_factory=lambda: {"shed_pips": 1})

    def __post_init__(self):
        clean = {}
        for name, w in self.weights.items():
            name = _ALIASES.get(name, name)
            if name not in _GUIDE_FUNCS:
                raise ParameterError(f"unknown guideline {name!r}")
            try:
                clean[name] = _exact(w)
            except (ValueError, OverflowError, TypeError) as exc:
                raise ParameterError(f"weight for {name} is not finite: {w!r}") from exc
        if not any(clean.values()):
            raise ParameterError("at least one guideline weight must be nonzero")
        object.__setattr__(self, "weights", {k: clean[k] for k in GUIDES if clean.get(k)})

    def scaled(self, factor) -> "GuidelineConfig":
        f = _exact(factor)
        return GuidelineConfig({k: w * f for k, w in self.weights.items()})

    def to_dict(self) -> dict:
        return {"weights": {k: _jsonable(w) for k, w in self.weights.items()}}

    @classmethod
    def from_dict(cls, data: dict) -> "GuidelineConfig":
        return cls(dict(data.get("weights", {"shed_pips": 1})))

    def __hash__(self):
        return hash(tuple(sorted(self.weights.items())))


def _jsonable(w: Number):
    return w if isinstance(w, int) else float(w)


DEFAULT_CONFIG = GuidelineConfig()


@dataclass(frozen=True)
class LeafValue:
    value: Number
    exact: bool


def phi(state: GameState, player: int, config: GuidelineConfig = DEFAULT_CONFIG) -> LeafValue:
    outcome = terminal_outcome(state)
    if outcome is not None:
        return LeafValue(outcome.payoff_to(player), True)
    total: Number = 0
    for name, w in config.weights.items():
        total += w * _GUIDE_FUNCS[name](state, player)
    return LeafValue(total, False)
