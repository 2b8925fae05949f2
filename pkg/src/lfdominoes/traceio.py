"""JSON documents for solution traces.

Layout (keys in this order)::

    {"format": "lfdominoes.trace/1",
     "deal": {"max_pip": 2, "hands": [[[0,0],...], [[0,2],...]]},
     "opening": "free:1",
     "budgets": [6, 6],            # "inf" for unlimited
     "recalls": ["inf", "inf"],
     "configs": [{"weights": {...}}, {"weights": {...}}],
     "periods": [{"period": 1, "player": 1, "move": "P 2-2@-", "forced": false,
                  "value": 6, "depth": 1, "node_count": 3, "horizon_visible": false,
                  "predictions": [{"action": "P 0-0@-", "line": [[2, "P 0-2@0"]]}, ...]},
                 ...],
     "outcome": {"kind": "blocked", "winner": 1, "payoff_to_player1": 2}}

Moves use the transcript notation: ``P a-b@e`` (``@-`` when opening) or ``pass``.
Non-integer values are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path as FsPath
from typing import Union

from .errors import TraceError
from .evaluator import GuidelineConfig
from .rules import Deal, Move, Outcome, parse_opening
from .solver import PeriodRecord, SolutionTrace
from .tree import format_budget, parse_budget

FORMAT = "lfdominoes.trace/1"


def _value_out(v):
    if v is None or isinstance(v, int):
        return v
    return str(Fraction(v))


def _value_in(v):
    if v is None or isinstance(v, int):
        return v
    q = Fraction(v)
    return int(q) if q.denominator == 1 else q


def outcome_to_dict(o: Outcome) -> dict:
    return {"kind": o.kind, "winner": o.winner, "payoff_to_player1": o.payoff_to_player1}


def trace_to_dict(trace: SolutionTrace) -> dict:
    return {
        "format": FORMAT,
        "deal": trace.deal.to_dict(),
        "opening": str(trace.opening),
        "budgets": [_budget_out(c) for c in trace.budgets],
        "recalls": [_budget_out(n) for n in trace.recalls],
        "configs": [c.to_dict() for c in trace.configs],
        "periods": [
            {
                "period": r.period,
                "player": r.player,
                "move": str(r.move),
                "forced": r.forced,
                "value": _value_out(r.value),
                "depth": r.depth,
                "node_count": r.node_count,
                "horizon_visible": r.horizon_visible,
                "predictions": [
                    {"action": str(a), "line": [[p, str(m)] for p, m in line]}
                    for a, line in r.predictions
                ],
            }
            for r in trace.periods
        ],
        "outcome": None if trace.outcome is None else outcome_to_dict(trace.outcome),
    }


def _budget_out(c):
    return c if isinstance(c, int) else format_budget(c)


def _budget_in(c):
    return c if isinstance(c, int) else parse_budget(str(c))


def trace_from_dict(data: dict) -> SolutionTrace:
    try:
        if data.get("format") != FORMAT:
            raise TraceError(f"unsupported trace format {data.get('format')!r}")
        periods = tuple(
            PeriodRecord(
                period=int(r["period"]),
                player=int(r["player"]),
                move=Move.parse(r["move"]),
                forced=bool(r["forced"]),
                value=_value_in(r["value"]),
                depth=int(r["depth"]),
                node_count=int(r["node_count"]),
                horizon_visible=bool(r["horizon_visible"]),
                predictions=tuple(
                    (Move.parse(p["action"]), tuple((int(q), Move.parse(m)) for q, m in p["line"]))
                    for p in r["predictions"]
                ),
            )
            for r in data["periods"]
        )
        o = data["outcome"]
        outcome = None if o is None else Outcome(o["kind"], o["winner"], int(o["payoff_to_player1"]))
        return SolutionTrace(
            deal=Deal.from_dict(data["deal"]),
            opening=parse_opening(data["opening"]),
            budgets=tuple(_budget_in(c) for c in data["budgets"]),
            recalls=tuple(_budget_in(n) for n in data["recalls"]),
            configs=tuple(GuidelineConfig.from_dict(c) for c in data["configs"]),
            periods=periods,
            outcome=outcome,
        )
    except TraceError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceError(f"malformed trace document: {exc}") from exc


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def save_trace(trace: SolutionTrace, path: Union[str, FsPath]) -> None:
    FsPath(path).write_text(dumps(trace_to_dict(trace)))


def load_trace(path: Union[str, FsPath]) -> SolutionTrace:
    try:
        data = json.loads(FsPath(path).read_text())
    except json.JSONDecodeError as exc:
        raise TraceError(f"{path}: not JSON: {exc}") from exc
    return trace_from_dict(data)
