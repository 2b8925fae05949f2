import math
import random

import pytest
from hypothesis import given, strategies as st

from helpers import all_double2_deals, random_state
from lfdominoes.agents import AgentSpec, agent_move, parse_agent, shared_oracle
from lfdominoes.errors import CapacityError, ParameterError, StateError
from lfdominoes.evaluator import GuidelineConfig
from lfdominoes.oracle import Oracle
from lfdominoes.rules import apply_move, deal_random, initial_state, legal_moves, place, standard_set
from lfdominoes.solver import limited_forecast_decision
from lfdominoes.tree import UNLIMITED


def test_parse_grammar():
    a = parse_agent("lf:c=8")
    assert (a.kind, a.budget, a.recall) == ("lf", 8, UNLIMITED)
    b = parse_agent("lf:c=inf,N=3,w.shed=2,w.block=0.5,w.repeat=1")
    assert b.budget == UNLIMITED and b.recall == 3
    assert b.config == GuidelineConfig({"shed_pips": 2, "block_opponent": 0.5, "repeat_strong_number": 1})
    assert parse_agent("random").kind == "random"
    assert parse_agent("perfect").kind == "perfect"
    assert parse_agent("greedy").kind == "greedy"
    assert parse_agent("random:seed=5").seed == 5


@pytest.mark.parametrize("text", ["lf:c=8", "lf:c=inf,N=3", "lf:c=4,w.shed=2,w.block=0.5", "random",
                                  "random:seed=9", "perfect", "greedy", "greedy:w.shed=1,w.repeat=2"])
def test_label_roundtrip(text):
    assert parse_agent(parse_agent(text).label) == parse_agent(text)


@pytest.mark.parametrize("text", ["lf", "lf:c=0", "lf:c=x", "minimax", "random:c=3", "lf:c=4,depth=2",
                                  "lf:c=3,w.shed=0"])
def test_parse_rejects(text):
    with pytest.raises(ParameterError):
        parse_agent(text)


def test_moves_at_example_root(example_states):
    root = example_states[0]
    assert agent_move(parse_agent("lf:c=6"), root) == place(2, 2)
    assert agent_move(parse_agent("perfect"), root) == place(0, 0)
    assert agent_move(parse_agent("greedy"), root) == place(2, 2)
    r = parse_agent("random")
    assert agent_move(r, root, random.Random(3)) == agent_move(r, root, random.Random(3))


def test_random_is_uniform(example_states):
    root = example_states[0]
    rng = random.Random(2024)
    n = 10_000
    counts = {m: 0 for m in legal_moves(root)}
    for _ in range(n):
        counts[agent_move(AgentSpec("random"), root, rng)] += 1
    sigma = math.sqrt(n * (1 / 3) * (2 / 3))
    for c in counts.values():
        assert abs(c - n / 3) <= 3 * sigma


def test_agent_errors(example_states):
    s = initial_state(deal_random(standard_set(2), 1, 0))
    s = apply_move(s, legal_moves(s)[0])
    s = apply_move(s, legal_moves(s)[0]) if not s.is_terminal else s
    while not s.is_terminal:
        s = apply_move(s, legal_moves(s)[0])
    with pytest.raises(StateError):
        agent_move(parse_agent("greedy"), s)
    with pytest.raises(ParameterError):
        agent_move(parse_agent("random"), example_states[0])


def test_perfect_over_capacity(monkeypatch):
    import lfdominoes.agents as agents
    monkeypatch.setattr(agents, "_ORACLE", Oracle(cap=1000))
    big = initial_state(deal_random(standard_set(6), 7, 3))
    with pytest.raises(CapacityError):
        agent_move(parse_agent("perfect"), big)


@given(st.integers(0, 10**6), st.sampled_from([1, 4, 9, 30]))
def test_lf_agent_uses_limited_forecast(seed, c):
    s = random_state(seed)
    assert agent_move(parse_agent(f"lf:c={c}"), s) == limited_forecast_decision(s, c)[0]


def test_unlimited_lf_plays_optimally_on_double2():
    oracle = shared_oracle()
    lf = parse_agent("lf:c=inf")
    agree = total = 0
    for deal in all_double2_deals():
        stack = [initial_state(deal, 1)]
        while stack:
            s = stack.pop()
            if s.is_terminal:
                continue
            move = agent_move(lf, s)
            best = oracle.best_move(s)
            # same value always; the same move whenever the tie-breaks pick alike
            assert oracle.value(apply_move(s, move)) == oracle.value(s)
            agree += move == best
            total += 1
            stack.extend(apply_move(s, m) for m in legal_moves(s))
    assert agree / total > 0.8
