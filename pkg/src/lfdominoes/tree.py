"""Budget-bounded expansion of the game tree and the path algebra.

A player with capability ``c`` sees the deepest complete prefix of levels
whose cumulative node count (root excluded) fits in ``c``. A level that only
partially fits is dropped entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from .errors import MoveError, ParameterError, PathError, StateError
from .rules import GameState, Move, _play, apply_move, children, legal_moves

UNLIMITED = math.inf
Budget = Union[int, float]


def check_budget(c: Budget) -> Budget:
    if c == UNLIMITED:
        return c
    if isinstance(c, bool) or not isinstance(c, int) or c < 1:
        raise ParameterError(f"budget must be a positive integer or unlimited, got {c!r}")
    return c


def parse_budget(text: str) -> Budget:
    if text in ("inf", "unlimited"):
        return UNLIMITED
    try:
        return check_budget(int(text))
    except ValueError as exc:
        raise ParameterError(f"bad budget {text!r}") from exc


def format_budget(c: Budget) -> str:
    return "inf" if c == UNLIMITED else str(c)


def iter_level_counts(root: GameState) -> Iterator[int]:
    """Yield the breadth of levels 1, 2, ... of the full tree below ``root``.

    Transposed positions are merged with a multiplicity, so the cost grows with
    the number of distinct positions per level, not with the tree size.
    """
    frontier: dict = {root.key(): (root, 1)}
    while frontier:
        nxt: dict = {}
        total = 0
        for state, mult in frontier.values():
            for _, child in children(state):
                total += mult
                if child.is_terminal:
                    continue
                k = child.key()
                if k in nxt:
                    nxt[k] = (nxt[k][0], nxt[k][1] + mult)
                else:
                    nxt[k] = (child, mult)
        if total == 0:
            return
        yield total
        frontier = nxt


def count_level_nodes(root: GameState, depth: Optional[int] = None) -> list[int]:
    if depth is not None and depth < 1:
        raise ParameterError("depth must be >= 1")
    out = []
    for n in iter_level_counts(root):
        out.append(n)
        if depth is not None and len(out) >= depth:
            break
    return out


@dataclass(frozen=True)
class Subtree:
    root: GameState
    depth: int
    level_counts: tuple[int, ...]
    budget: Budget
    horizon_visible: bool

    @property
    def node_count(self) -> int:
        return sum(self.level_counts)

    def iter_nodes(self) -> Iterator[tuple[int, Move, GameState]]:
        """Depth-first walk over (level, move, state) for every non-root node."""
        stack = [(0, m, s) for m, s in reversed(children(self.root))] if self.depth else []
        while stack:
            lvl, move, state = stack.pop()
            yield lvl + 1, move, state
            if lvl + 1 < self.depth:
                stack.extend((lvl + 1, m, s) for m, s in reversed(children(state)))

    def dump(self) -> str:
        """Indented text listing, one node per line: depth, move, free ends, node id."""
        lines = [f"0 root {list(self.root.ends)} #0"]
        for i, (lvl, move, state) in enumerate(self.iter_nodes(), start=1):
            lines.append(f"{'  ' * lvl}{lvl} {move} {list(state.ends)} #{i}")
        return "\n".join(lines)


def expand_within_budget(root: GameState, budget: Budget) -> Subtree:
    if root.is_terminal:
        raise StateError("cannot expand a terminal state")
    budget = check_budget(budget)
    counts: list[int] = []
    used = 0
    exhausted = True
    for n in iter_level_counts(root):
        if used + n > budget:
            exhausted = False
            break
        used += n
        counts.append(n)
    return Subtree(root, len(counts), tuple(counts), budget, exhausted)


# --- paths -------------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    origin: GameState
    moves: tuple[tuple[int, Move], ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def __post_init__(self):
        moves = tuple((int(p), m) for p, m in self.moves)
        object.__setattr__(self, "moves", moves)
        for (p, _), (q, _) in zip(moves, moves[1:]):
            if p == q:
                raise PathError("players must alternate along a path")

    def states(self) -> list[GameState]:
        out = [self.origin]
        state = self.origin
        for player, move in self.moves:
            if state.is_terminal or player != state.to_move:
                raise PathError(f"move {move} by player {player} does not fit the state")
            try:
                state = apply_move(state, move)
            except MoveError as exc:
                raise PathError(str(exc)) from exc
            out.append(state)
        return out

    def end_state(self) -> GameState:
        return self.states()[-1]

    def move_list(self) -> list[Move]:
        return [m for _, m in self.moves]


def truncate_first(path: Path, n: int) -> Path:
    if n < 0:
        raise ParameterError("n must be >= 0")
    return Path(path.origin, path.moves[:n])


def truncate_last(path: Path, n: int) -> Path:
    """Last ``n`` moves; the origin moves forward accordingly."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    if n >= len(path):
        return path
    states = path.states()
    cut = len(path) - n
    return Path(states[cut], path.moves[cut:])


def concat(q: Path, q2: Path) -> Path:
    if q.moves and q2.moves and q.moves[-1][0] == q2.moves[0][0]:
        raise PathError("concatenation would give the same player two moves in a row")
    if q2.origin.key() != q.end_state().key():
        raise PathError("second path does not start where the first one ends")
    return Path(q.origin, q.moves + q2.moves)


@dataclass(frozen=True)
class History:
    """Play so far; a player with recall ``N`` only sees the last ``N`` moves."""

    path: Path
    recall: Budget = UNLIMITED

    def recalled(self) -> Path:
        if self.recall == UNLIMITED:
            return self.path
        return truncate_last(self.path, int(self.recall))


Policy = Callable[[GameState], Move]


def continuation_path(profile: Policy, h_star: Path, a: Move, limit: Optional[int] = None) -> Path:
    """Play ``a`` after ``h_star``, then follow ``profile`` until the end (or ``limit`` moves).

    The returned path starts at the successor of ``a``.
    """
    state = h_star.end_state()
    if state.is_terminal or a not in legal_moves(state):
        raise MoveError(a)
    state = _play(state, a)
    return follow(profile, state, limit)


def follow(profile: Policy, state: GameState, limit: Optional[int] = None) -> Path:
    origin = state
    moves = []
    while not state.is_terminal and (limit is None or len(moves) < limit):
        m = profile(state)
        moves.append((state.to_move, m))
        state = _play(state, m)
    return Path(origin, tuple(moves))
