"""Exit criteria. Each test records PASS/FAIL for the terminal summary."""

import contextlib
import json
import math
import random
import time

import pytest

import bruteforce
from conftest import CRITERIA
from helpers import all_double2_deals, random_state
from lfdominoes import agents, cli, solver
from lfdominoes.agents import parse_agent
from lfdominoes.harness import EXAMPLE_DEAL, ExperimentConfig, run_match, run_tournament, to_json
from lfdominoes.oracle import full_tree_spe
from lfdominoes.rules import PASS, StarterFreeChoice, deal_random, place, standard_set
from lfdominoes.solver import check_consistent, check_justified, construct_solution
from lfdominoes.traceio import dumps, trace_to_dict
from lfdominoes.tree import UNLIMITED, count_level_nodes, expand_within_budget

pytestmark = pytest.mark.acceptance


@contextlib.contextmanager
def criterion(name):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        CRITERIA[name] = f"FAIL ({time.perf_counter() - start:.2f}s) {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        raise
    CRITERIA[name] = f"PASS ({time.perf_counter() - start:.2f}s)"


def fresh_caches():
    solver._CACHE.clear()
    agents._ORACLE = None


# --- artifacts, re-generated for the determinism criterion -------------------------

def golden_export(capsys, tmp_path):
    out = tmp_path / "golden.json"
    code = cli.main(["example", "--json", str(out)])
    capsys.readouterr()
    return code, out.read_text()


def oracle_export(tmp_path, capsys):
    deal = tmp_path / "deal.json"
    deal.write_text(json.dumps(EXAMPLE_DEAL.to_dict()))
    out = tmp_path / "oracle.json"
    code = cli.main(["oracle", "--deal", str(deal), "--opening", "free:1", "--json", str(out)])
    capsys.readouterr()
    return code, out.read_text()


def oracle_equivalence_rows():
    rows = []
    for deal in all_double2_deals():
        rows.append((str(deal), full_tree_spe(deal).value,
                     bruteforce.value_to_player1(deal.hand1, deal.hand2)))
    for seed in range(100):
        deal = deal_random(standard_set(3), 4, seed)
        rows.append((seed, full_tree_spe(deal).value, bruteforce.value_to_player1(deal.hand1, deal.hand2)))
    return rows


def solution_traces():
    return [construct_solution(deal_random(standard_set(3), 4, seed), c, c)
            for seed in range(100) for c in (4, 8, 16)]


def better_than_random_report():
    return run_tournament(ExperimentConfig(max_pip=3, tiles_per_player=4, num_games=500, seed=0,
                                           opening="free:1", agent1="lf:c=8", agent2="random",
                                           swap_sides=True))


def foresight_reports():
    return {c: run_tournament(ExperimentConfig(max_pip=3, tiles_per_player=4, num_games=500, seed=1000,
                                               opening="free:1", agent1=f"lf:c={c}", agent2="random",
                                               swap_sides=True))
            for c in ("2", "6", "inf")}


def exact_foresight_rows():
    lf, perfect = parse_agent("lf:c=inf"), parse_agent("perfect")
    rows = []
    for deal in all_double2_deals():
        value = full_tree_spe(deal).value
        as_first = run_match(deal, lf, perfect, StarterFreeChoice(1)).outcome.payoff_to_player1
        as_second = run_match(deal, perfect, lf, StarterFreeChoice(1)).outcome.payoff_to_player1
        rows.append((str(deal), value, as_first, as_second))
    return rows


# --- criteria ----------------------------------------------------------------------

def test_1_golden_trace(capsys, tmp_path):
    with criterion("1 golden trace"):
        start = time.perf_counter()
        code, text = golden_export(capsys, tmp_path)
        elapsed = time.perf_counter() - start
        assert code == 0
        doc = json.loads(text)
        moves = [p["move"] for p in doc["periods"]]
        assert moves == ["P 2-2@-", "P 1-2@2", "P 0-1@1", "P 0-2@0", "pass", "pass"]
        trace = cli.load_trace(tmp_path / "golden.json")
        assert sorted(trace.path.states()[4].ends) == [2, 2]
        assert doc["outcome"] == {"kind": "blocked", "winner": 1, "payoff_to_player1": 2}
        depths = [(p["player"], p["period"], p["depth"]) for p in doc["periods"][:3]]
        assert depths == [(1, 1, 1), (2, 2, 2), (1, 3, 4)]
        assert elapsed < 1.0


def test_2_gain_three_line(capsys, tmp_path):
    with criterion("2 gain-3 line"):
        start = time.perf_counter()
        code, text = oracle_export(tmp_path, capsys)
        elapsed = time.perf_counter() - start
        doc = json.loads(text)
        assert code == 0
        assert doc["principal"][0] == [1, "P 0-0@-"]
        assert elapsed < 1.0
        assert doc["value"] == 3, f"exact value is {doc['value']:+d}, not +3"


def test_3_oracle_equivalence():
    with criterion("3 oracle equivalence"):
        start = time.perf_counter()
        rows = oracle_equivalence_rows()
        assert len(rows) >= 10 + 100
        mismatches = [r for r in rows if r[1] != r[2]]
        assert not mismatches
        assert time.perf_counter() - start < 60


def test_4_solutions_by_construction():
    with criterion("4 justified and consistent"):
        start = time.perf_counter()
        traces = solution_traces()
        assert len(traces) == 300
        for t in traces:
            assert check_justified(t), check_justified(t)
            assert check_consistent(t), check_consistent(t)
        assert time.perf_counter() - start < 120


def test_5_better_than_random():
    with criterion("5 better than random"):
        start = time.perf_counter()
        report = better_than_random_report()
        lf = report.agents[0]
        assert lf.games == 1000
        assert lf.win_rate_ci[0] > 0.5, lf
        assert time.perf_counter() - start < 120


def test_6_larger_foresight():
    with criterion("6 larger foresight"):
        start = time.perf_counter()
        for deal, value, as_first, as_second in exact_foresight_rows():
            assert as_first == value, deal
            assert as_second == value, deal
        reports = foresight_reports()
        stats = [reports[c].agents[0] for c in ("2", "6", "inf")]
        for lo, hi in zip(stats, stats[1:]):
            se = math.sqrt(lo.payoff_variance / lo.games + hi.payoff_variance / hi.games)
            assert hi.mean_payoff >= lo.mean_payoff - se, (lo, hi)
        assert time.perf_counter() - start < 180


def test_7_budget_depth_properties():
    with criterion("7 f(c) properties"):
        start = time.perf_counter()
        rng = random.Random(77)
        for i in range(1000):
            s = random_state(rng.randrange(10**9))
            full = count_level_nodes(s)
            budgets = sorted(rng.randint(1, 80) for _ in range(4)) + [UNLIMITED]
            subs = [expand_within_budget(s, c) for c in budgets]
            for c, sub in zip(budgets, subs):
                assert sub.node_count <= c
                assert tuple(full[:sub.depth]) == sub.level_counts
                if sub.depth < len(full):
                    assert sub.node_count + full[sub.depth] > c
            assert [x.depth for x in subs] == sorted(x.depth for x in subs)
            assert subs[-1].depth == len(full)
        assert time.perf_counter() - start < 30


def test_8_determinism(capsys, tmp_path):
    with criterion("8 determinism"):
        def run_all(tag):
            d = tmp_path / tag
            d.mkdir()
            fresh_caches()
            out = [golden_export(capsys, d)[1], oracle_export(d, capsys)[1],
                   repr(oracle_equivalence_rows()),
                   "".join(dumps(trace_to_dict(t)) for t in solution_traces()),
                   to_json(better_than_random_report()),
                   repr(exact_foresight_rows())]
            out += [to_json(r) for r in foresight_reports().values()]
            return out

        first, second = run_all("a"), run_all("b")
        for i, (x, y) in enumerate(zip(first, second)):
            assert x == y, f"artifact {i} differs between runs"
