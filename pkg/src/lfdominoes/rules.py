"""Two-player draw dominoes without a boneyard.

States are immutable values. ``legal_moves``/``apply_move`` are the public,
checked API; the search code uses ``children`` which skips validation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Optional, Union

from .errors import MoveError, ParameterError, RuleError, StateError

MAX_PIP_LIMIT = 18


class Tile(NamedTuple):
    low: int
    high: int

    @classmethod
    def of(cls, a: int, b: int) -> "Tile":
        return cls(a, b) if a <= b else cls(b, a)

    @property
    def pips(self) -> int:
        return self.low + self.high

    @property
    def is_double(self) -> bool:
        return self.low == self.high

    def other(self, pip: int) -> int:
        """Pip on the opposite half from ``pip``."""
        return self.high if pip == self.low else self.low

    def __str__(self) -> str:
        return f"{self.low}-{self.high}"


class Move(NamedTuple):
    """A placement of ``tile`` against the free end showing ``end``.

    ``end`` is None for the opening placement. Both fields None means pass.
    """

    tile: Optional[Tile] = None
    end: Optional[int] = None

    @property
    def is_pass(self) -> bool:
        return self.tile is None

    def sort_key(self):
        if self.tile is None:
            return (-1, -1, -1)
        return (self.tile.low, self.tile.high, -1 if self.end is None else self.end)

    def __str__(self) -> str:
        if self.tile is None:
            return "pass"
        return f"P {self.tile}@{'-' if self.end is None else self.end}"

    @classmethod
    def parse(cls, text: str) -> "Move":
        text = text.strip()
        if text == "pass":
            return PASS
        try:
            kind, rest = text.split(" ", 1)
            tile_s, end_s = rest.split("@")
            a, b = (int(x) for x in tile_s.split("-"))
            if kind != "P":
                raise ValueError(kind)
        except ValueError as exc:
            raise ParameterError(f"cannot parse move {text!r}") from exc
        return cls(Tile.of(a, b), None if end_s == "-" else int(end_s))


PASS = Move()


def place(a: int, b: int, end: Optional[int] = None) -> Move:
    return Move(Tile.of(a, b), end)


def standard_set(max_pip: int) -> frozenset[Tile]:
    if not 0 <= max_pip <= MAX_PIP_LIMIT:
        raise ParameterError(f"max_pip must be in [0, {MAX_PIP_LIMIT}], got {max_pip}")
    return frozenset(Tile(a, b) for a in range(max_pip + 1) for b in range(a, max_pip + 1))


def pip_sum(hand) -> int:
    return sum(t.low + t.high for t in hand)


@dataclass(frozen=True)
class Deal:
    max_pip: int
    hand1: tuple[Tile, ...]
    hand2: tuple[Tile, ...]

    def __post_init__(self):
        h1 = tuple(sorted(Tile.of(*t) for t in self.hand1))
        h2 = tuple(sorted(Tile.of(*t) for t in self.hand2))
        object.__setattr__(self, "hand1", h1)
        object.__setattr__(self, "hand2", h2)
        if not 0 <= self.max_pip <= MAX_PIP_LIMIT:
            raise ParameterError(f"max_pip out of range: {self.max_pip}")
        if len(h1) != len(h2):
            raise ParameterError("hands must have equal size")
        tiles = h1 + h2
        if len(set(tiles)) != len(tiles):
            raise ParameterError("hands overlap or repeat a tile")
        if any(t.high > self.max_pip or t.low < 0 for t in tiles):
            raise ParameterError(f"tile outside the double-{self.max_pip} set")

    @property
    def hands(self) -> tuple[tuple[Tile, ...], tuple[Tile, ...]]:
        return (self.hand1, self.hand2)

    def to_dict(self) -> dict:
        return {
            "max_pip": self.max_pip,
            "hands": [[list(t) for t in self.hand1], [list(t) for t in self.hand2]],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Deal":
        try:
            h1, h2 = data["hands"]
            return cls(int(data["max_pip"]), tuple(Tile.of(*t) for t in h1), tuple(Tile.of(*t) for t in h2))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"malformed deal: {exc}") from exc

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Deal":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def deal_random(tiles, per_player: int, seed: int) -> Deal:
    tiles = sorted(tiles)
    if per_player < 0 or 2 * per_player > len(tiles):
        raise ParameterError(f"cannot deal {per_player} tiles each from {len(tiles)}")
    max_pip = max(t.high for t in tiles)
    drawn = random.Random(seed).sample(tiles, 2 * per_player)
    return Deal(max_pip, tuple(drawn[:per_player]), tuple(drawn[per_player:]))


# --- opening rules -----------------------------------------------------------

@dataclass(frozen=True)
class BiggestDoubleForced:
    def __str__(self) -> str:
        return "double"


@dataclass(frozen=True)
class StarterFreeChoice:
    starter: int = 1

    def __post_init__(self):
        if self.starter not in (1, 2):
            raise ParameterError(f"starter must be 1 or 2, got {self.starter}")

    def __str__(self) -> str:
        return f"free:{self.starter}"


OpeningRule = Union[BiggestDoubleForced, StarterFreeChoice]


def parse_opening(text: str) -> OpeningRule:
    if text == "double":
        return BiggestDoubleForced()
    if text.startswith("free:"):
        try:
            return StarterFreeChoice(int(text[5:]))
        except ValueError as exc:
            raise ParameterError(f"bad opening rule {text!r}") from exc
    raise ParameterError(f"bad opening rule {text!r} (expected free:<1|2> or double)")


def opening(deal: Deal, rule: OpeningRule) -> tuple[int, Optional[Move]]:
    if isinstance(rule, StarterFreeChoice):
        return rule.starter, None
    best = None
    for player, hand in ((1, deal.hand1), (2, deal.hand2)):
        for t in hand:
            if t.is_double and (best is None or t.low > best[1].low):
                best = (player, t)
    if best is None:
        raise RuleError("no double in either hand; use a free-choice opening")
    return best[0], Move(best[1], None)


# --- game state --------------------------------------------------------------

@dataclass(frozen=True)
class GameState:
    hands: tuple[tuple[Tile, ...], tuple[Tile, ...]]
    train: tuple[tuple[int, int], ...] = ()
    to_move: int = 1
    consecutive_passes: int = 0
    period: int = 1
    ends: tuple[int, ...] = field(default=())

    @property
    def hand(self) -> tuple[Tile, ...]:
        return self.hands[self.to_move - 1]

    def hand_of(self, player: int) -> tuple[Tile, ...]:
        return self.hands[player - 1]

    def key(self) -> tuple:
        """Everything that determines the rest of the game (not train order or period)."""
        e = self.ends
        if e and e[0] > e[1]:
            e = (e[1], e[0])
        return (self.hands, e, self.to_move, self.consecutive_passes)

    @property
    def is_terminal(self) -> bool:
        return self.consecutive_passes >= 2 or not self.hands[0] or not self.hands[1]


def initial_state(deal: Deal, starter: int = 1) -> GameState:
    return GameState(hands=deal.hands, to_move=starter)


def other(player: int) -> int:
    return 3 - player


def place_moves(hand, ends) -> list[Move]:
    """Placements of ``hand`` on ``ends``, one per distinct resulting end pair."""
    if not ends:
        return [Move(t, None) for t in hand]
    values = sorted(set(ends))
    return [Move(t, e) for t in hand for e in values if t.low == e or t.high == e]


def legal_moves(state: GameState) -> list[Move]:
    if state.is_terminal:
        raise StateError("no legal moves in a terminal state")
    return place_moves(state.hand, state.ends) or [PASS]


def _play(state: GameState, move: Move) -> GameState:
    nxt = other(state.to_move)
    if move.tile is None:
        return GameState(state.hands, state.train, nxt, state.consecutive_passes + 1,
                         state.period + 1, state.ends)
    t = move.tile
    hand = tuple(x for x in state.hand if x != t)
    hands = (hand, state.hands[1]) if state.to_move == 1 else (state.hands[0], hand)
    if not state.train:
        train = ((t.low, t.high),)
        ends = (t.low, t.high)
    else:
        left, right = state.ends
        free = t.other(move.end)
        if move.end == left:
            train = ((free, left),) + state.train
            ends = (free, right)
        else:
            train = state.train + ((right, free),)
            ends = (left, free)
    return GameState(hands, train, nxt, 0, state.period + 1, ends)


def apply_move(state: GameState, move: Move) -> GameState:
    if state.is_terminal:
        raise MoveError(move, "game is over")
    if move not in legal_moves(state):
        raise MoveError(move)
    return _play(state, move)


def children(state: GameState) -> list[tuple[Move, GameState]]:
    """Unchecked expansion used by the search code; empty for terminal states."""
    if state.is_terminal:
        return []
    moves = place_moves(state.hand, state.ends) or [PASS]
    return [(m, _play(state, m)) for m in moves]


@dataclass(frozen=True)
class Outcome:
    kind: str  # "domino" or "blocked"
    winner: Optional[int]  # None is a draw
    payoff_to_player1: int

    def payoff_to(self, player: int) -> int:
        return self.payoff_to_player1 if player == 1 else -self.payoff_to_player1

    def __str__(self) -> str:
        who = "draw" if self.winner is None else f"player {self.winner} wins"
        return f"{self.kind}, {who}, payoff to player 1 = {self.payoff_to_player1:+d}"


def terminal_outcome(state: GameState) -> Optional[Outcome]:
    p1, p2 = pip_sum(state.hands[0]), pip_sum(state.hands[1])
    if not state.hands[0]:
        return Outcome("domino", 1, p2)
    if not state.hands[1]:
        return Outcome("domino", 2, -p1)
    if state.consecutive_passes >= 2:
        if p1 == p2:
            return Outcome("blocked", None, 0)
        return Outcome("blocked", 1 if p1 < p2 else 2, p2 - p1)
    return None


def format_ends(ends) -> str:
    return "[" + ",".join(str(e) for e in ends) + "]"


def transcript_line(period: int, player: int, move: Move, ends_after) -> str:
    return f"{period}\t{player}\t{move}\t{format_ends(ends_after)}"


def check_state(state: GameState, dealt) -> None:
    """Assert the structural invariants of ``state`` (used by tests and replay)."""
    placed = [Tile.of(*t) for t in state.train]
    held = list(state.hands[0]) + list(state.hands[1])
    assert sorted(placed + held) == sorted(dealt), "tile conservation violated"
    if state.train:
        assert state.ends == (state.train[0][0], state.train[-1][1]), "ends do not match train"
        for (_, b), (c, _) in zip(state.train, state.train[1:]):
            assert b == c, "train is not connected"
    else:
        assert state.ends == ()
    assert 0 <= state.consecutive_passes <= 2
