"""Exact backward induction over the whole game tree.

Uses only the game rules and true terminal payoffs, never the guideline
evaluator, so it can serve as ground truth for the limited-forecast solver.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .errors import CapacityError
from .rules import (
    Deal,
    GameState,
    Move,
    OpeningRule,
    StarterFreeChoice,
    _play,
    children,
    initial_state,
    opening,
    terminal_outcome,
)
from .tree import Path, iter_level_counts

DEFAULT_CAP = 10**7


def estimate_nodes(state: GameState, cap: Optional[int] = None) -> int:
    """Size of the full tree below ``state``; stops counting once ``cap`` is passed."""
    total = 0
    for n in iter_level_counts(state):
        total += n
        if cap is not None and total > cap:
            break
    return total


class Oracle:
    """Memoized exact solver. Values are payoffs to player 1.

    Ties go to the first maximizing move in legal order.
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self._table: dict = {}
        self._admitted: set = set()

    def admit(self, state: GameState) -> None:
        k = state.key()
        if k in self._admitted or k in self._table:
            return
        n = estimate_nodes(state, self.cap)
        if n > self.cap:
            raise CapacityError(n, self.cap)
        self._admitted.add(k)

    def value(self, state: GameState) -> int:
        self.admit(state)
        return self._solve(state)[1]

    def best_move(self, state: GameState) -> Move:
        self.admit(state)
        self._solve(state)
        return self._table[state.key()][0]

    __call__ = best_move

    def _solve(self, state: GameState) -> tuple[Optional[Move], int]:
        k = state.key()
        hit = self._table.get(k)
        if hit is not None:
            return hit
        out = terminal_outcome(state)
        if out is not None:
            res = (None, out.payoff_to_player1)
        else:
            sign = 1 if state.to_move == 1 else -1
            res = None
            for move, child in children(state):
                v = self._solve(child)[1]
                if res is None or sign * v > sign * res[1]:
                    res = (move, v)
        self._table[k] = res
        return res

    def principal(self, state: GameState) -> Path:
        origin = state
        moves = []
        while not state.is_terminal:
            m = self.best_move(state)
            moves.append((state.to_move, m))
            state = _play(state, m)
        return Path(origin, tuple(moves))


@dataclass(frozen=True)
class OracleResult:
    value: int
    principal: Path
    policy: Oracle


def full_tree_spe(deal: Deal, rule: OpeningRule = StarterFreeChoice(1), cap: int = DEFAULT_CAP) -> OracleResult:
    """Value to player 1 and principal line from the opening of ``deal``."""
    starter, forced = opening(deal, rule)
    state = initial_state(deal, starter)
    moves = []
    if forced is not None:
        moves.append((state.to_move, forced))
        state = _play(state, forced)
    solver = Oracle(cap)
    if state.is_terminal:
        value = terminal_outcome(state).payoff_to_player1
        rest = Path(state)
    else:
        value = solver.value(state)
        rest = solver.principal(state)
    origin = initial_state(deal, starter)
    return OracleResult(value, Path(origin, tuple(moves) + rest.moves), solver)


sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))
