"""Exception hierarchy shared by the engine, solver and harness."""


class DominoesError(Exception):
    pass


class ParameterError(DominoesError, ValueError):
    """Bad configuration value (set size, hand size, budget, ...)."""


class RuleError(DominoesError):
    """An opening rule cannot be applied to the given deal."""


class StateError(DominoesError):
    """Operation requested on a state that does not admit it (e.g. terminal)."""


class MoveError(DominoesError):
    def __init__(self, move, message: str = "illegal move"):
        super().__init__(f"{message}: {move}")
        self.move = move


class PathError(DominoesError):
    pass


class TraceError(DominoesError):
    """A serialized trace cannot be replayed."""


class CapacityError(DominoesError):
    def __init__(self, estimated: int, cap: int):
        super().__init__(f"game tree has {estimated} nodes, above the cap of {cap}")
        self.estimated = estimated
        self.cap = cap


class MatchError(DominoesError):
    """An agent failed during a match; the original error is the ``__cause__``."""

    def __init__(self, period: int, player: int, cause: Exception):
        super().__init__(f"period {period}, player {player}: {type(cause).__name__}: {cause}")
        self.period = period
        self.player = player
