"""Command-line entry point: ``lfdominoes <subcommand>``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path as FsPath

from . import harness
from .agents import parse_agent
from .errors import DominoesError
from .oracle import full_tree_spe
from .rules import Deal, parse_opening
from .solver import check_consistent, check_justified, construct_solution
from .traceio import dumps, load_trace, trace_to_dict

GOLDEN = "golden_trace.json"


def golden_fixture() -> str:
    return resources.files("lfdominoes").joinpath("data", GOLDEN).read_text()


def format_trace(trace) -> str:
    lines = ["period\tplayer\tmove\tends after"]
    lines += trace.transcript()
    lines.append("")
    for r in trace.periods:
        if r.forced:
            lines.append(f"t={r.period} p{r.player}: forced opening {r.move}")
            continue
        seen = "horizon visible" if r.horizon_visible else "horizon hidden"
        lines.append(f"t={r.period} p{r.player}: depth {r.depth}, {r.node_count} nodes, {seen}, "
                     f"value {r.value}, plays {r.move}")
        for a, line in r.predictions:
            cont = ", ".join(f"p{p} {m}" for p, m in line) or "(nothing)"
            lines.append(f"    if {a}: {cont}")
    lines.append("")
    lines.append(f"outcome: {trace.outcome}")
    return "\n".join(lines)


def cmd_example(args) -> int:
    trace = harness.trace_worked_example()
    print(format_trace(trace))
    produced = dumps(trace_to_dict(trace))
    if args.json:
        FsPath(args.json).write_text(produced)
    if produced != golden_fixture():
        print("MISMATCH: trace differs from the committed golden fixture", file=sys.stderr)
        return 1
    print("golden fixture: match")
    return 0


def cmd_solve(args) -> int:
    deal = Deal.load(args.deal)
    rule = parse_opening(args.opening)
    a1, a2 = parse_agent(args.agent1), parse_agent(args.agent2)
    if a1.kind == a2.kind == "lf":
        trace = construct_solution(deal, a1.budget, a2.budget, rule, a1.config, a2.config,
                                   (a1.recall, a2.recall))
        print(format_trace(trace))
        doc = trace_to_dict(trace)
    else:
        t = harness.run_match(deal, a1, a2, rule, args.seed)
        print("\n".join(t.lines()))
        print(f"outcome: {t.outcome}")
        doc = t.to_dict()
    if args.json:
        FsPath(args.json).write_text(dumps(doc))
    return 0


def cmd_oracle(args) -> int:
    deal = Deal.load(args.deal)
    res = full_tree_spe(deal, parse_opening(args.opening))
    print(f"value to player 1: {res.value:+d}")
    print("principal line: " + "; ".join(f"p{p} {m}" for p, m in res.principal.moves))
    if args.json:
        FsPath(args.json).write_text(dumps({
            "value": res.value,
            "principal": [[p, str(m)] for p, m in res.principal.moves],
        }))
    return 0


_TOURNAMENT_FLAGS = {
    "max_pip": "max_pip", "tiles": "tiles_per_player", "games": "num_games", "seed": "seed",
    "opening": "opening", "agent1": "agent1", "agent2": "agent2", "swap": "swap_sides", "jobs": "jobs",
}


def cmd_tournament(args) -> int:
    data = {}
    if args.config:
        data = json.loads(FsPath(args.config).read_text())
    for flag, key in _TOURNAMENT_FLAGS.items():
        v = getattr(args, flag)
        if v is not None:
            data[key] = v
    config = harness.ExperimentConfig.from_dict(data)
    report = harness.run_tournament(config)
    for a in report.agents:
        lo, hi = a.win_rate_ci
        print(f"{a.agent}: {a.wins}W {a.draws}D {a.losses}L of {a.games}, "
              f"win rate {a.win_rate:.3f} [{lo:.3f}, {hi:.3f}], "
              f"mean payoff {a.mean_payoff:+.3f} (var {a.payoff_variance:.3f})")
    if args.out:
        harness.export(report, args.out, args.format)
    return 0


def cmd_check(args) -> int:
    trace = load_trace(args.trace)
    just, cons = check_justified(trace), check_consistent(trace)
    print(f"justified: {just}")
    print(f"consistent: {cons}")
    return 0 if just and cons else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lfdominoes", description="Limited-forecast play of two-player draw dominoes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("example", help="print the double-2 worked example and compare with the golden fixture")
    s.add_argument("--json", help="also write the trace here")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("solve", help="play a deal file between two agents")
    s.add_argument("--deal", required=True)
    s.add_argument("--agent1", required=True)
    s.add_argument("--agent2", required=True)
    s.add_argument("--opening", default="free:1")
    s.add_argument("--seed", type=int, default=0, help="seed for random agents")
    s.add_argument("--json")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="exact value and principal line of a deal")
    s.add_argument("--deal", required=True)
    s.add_argument("--opening", default="free:1")
    s.add_argument("--json")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("tournament", help="seeded series of random deals")
    s.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override it")
    s.add_argument("--max-pip", dest="max_pip", type=int)
    s.add_argument("--tiles", type=int)
    s.add_argument("--games", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--opening")
    s.add_argument("--agent1")
    s.add_argument("--agent2")
    s.add_argument("--swap", action="store_true", default=None)
    s.add_argument("--jobs", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_tournament)

    s = sub.add_parser("check", help="verify a serialized trace is justified and consistent")
    s.add_argument("--trace", required=True)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DominoesError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
